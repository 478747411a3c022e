#include "iotafd/choreo/model.hpp"

#include <functional>
#include <set>

#include "iotafd/error.hpp"

namespace iotafd::choreo {
namespace {

const Port* find_port(const std::vector<Port>& ports, const std::string& name) {
  for (const Port& p : ports) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void require_unique_ports(const std::string& owner, const std::vector<Port>& inputs, const std::vector<Port>& outputs) {
  std::set<std::string> names;
  for (const auto* ports : {&inputs, &outputs}) {
    for (const Port& p : *ports) {
      if (p.name.empty() || p.type.empty()) {
        throw Error(Errc::invalid_argument, owner + ": ports need a name and a type");
      }
      if (!names.insert(p.name).second) {
        throw Error(Errc::invalid_argument, owner + ": duplicate port name '" + p.name + "'");
      }
    }
  }
}

}  // namespace

const Port* Ingredient::port(Direction dir, const std::string& name) const {
  return find_port(dir == Direction::input ? inputs : outputs, name);
}

const Port* Offering::port(Direction dir, const std::string& name) const {
  return find_port(dir == Direction::input ? inputs : outputs, name);
}

const Ingredient* Recipe::ingredient(const IngredientId& ingredient_id) const {
  for (const Ingredient& i : ingredients) {
    if (i.id == ingredient_id) return &i;
  }
  return nullptr;
}

void Recipe::validate() const {
  auto fail = [&](const std::string& what) { throw Error(Errc::invalid_argument, "recipe '" + id + "': " + what); };
  std::set<IngredientId> ids;
  for (const Ingredient& i : ingredients) {
    if (i.id.empty()) fail("ingredient without id");
    if (!ids.insert(i.id).second) fail("duplicate ingredient '" + i.id + "'");
    require_unique_ports("ingredient '" + i.id + "'", i.inputs, i.outputs);
  }
  std::map<IngredientId, std::vector<IngredientId>> next;
  for (const Interaction& x : interactions) {
    const Ingredient* from = ingredient(x.from.node);
    const Ingredient* to = ingredient(x.to.node);
    if (from == nullptr || to == nullptr) fail("interaction references an unknown ingredient");
    const Port* out = from->port(Direction::output, x.from.port);
    const Port* in = to->port(Direction::input, x.to.port);
    if (out == nullptr) fail("'" + x.from.node + "' has no output '" + x.from.port + "'");
    if (in == nullptr) fail("'" + x.to.node + "' has no input '" + x.to.port + "'");
    if (out->type != in->type) {
      fail("type mismatch " + x.from.node + "." + x.from.port + " -> " + x.to.node + "." + x.to.port);
    }
    next[x.from.node].push_back(x.to.node);
  }
  // Depth-first search with colours: 1 on the stack, 2 finished.
  std::map<IngredientId, int> colour;
  std::function<void(const IngredientId&)> visit = [&](const IngredientId& n) {
    colour[n] = 1;
    for (const auto& m : next[n]) {
      if (colour[m] == 1) fail("interaction graph has a cycle through '" + m + "'");
      if (colour[m] == 0) visit(m);
    }
    colour[n] = 2;
  };
  for (const Ingredient& i : ingredients) {
    if (colour[i.id] == 0) visit(i.id);
  }
}

void validate_offering(const Offering& offering, const CategoryTaxonomy& taxonomy) {
  if (offering.id.empty()) throw Error(Errc::invalid_argument, "offering without id");
  if (!taxonomy.contains(offering.category)) {
    throw Error(Errc::taxonomy, "offering '" + offering.id + "': unknown category '" + offering.category + "'");
  }
  require_unique_ports("offering '" + offering.id + "'", offering.inputs, offering.outputs);
}

}  // namespace iotafd::choreo
