#include "iotafd/choreo/discovery.hpp"

#include <array>

#include "iotafd/error.hpp"

namespace iotafd::choreo {
namespace {

bool pair_ports(const std::vector<Port>& wanted, const std::vector<Port>& offered,
                std::map<std::string, std::string>& out) {
  std::vector<bool> used(offered.size(), false);
  for (const Port& w : wanted) {
    bool found = false;
    for (std::size_t k = 0; k < offered.size(); ++k) {
      if (!used[k] && offered[k].type == w.type) {
        used[k] = true;
        out.emplace(w.name, offered[k].name);
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::optional<PortMapping> map_ports(const Ingredient& ingredient, const Offering& offering,
                                     const CategoryTaxonomy& taxonomy) {
  if (!taxonomy.is_a(offering.category, ingredient.category)) return std::nullopt;
  PortMapping m;
  if (!pair_ports(ingredient.inputs, offering.inputs, m.inputs)) return std::nullopt;
  if (!pair_ports(ingredient.outputs, offering.outputs, m.outputs)) return std::nullopt;
  return m;
}

bool match_offering(const Ingredient& ingredient, const Offering& offering, const CategoryTaxonomy& taxonomy) {
  return map_ports(ingredient, offering, taxonomy).has_value();
}

std::string_view to_string(RrcStatus status) noexcept {
  switch (status) {
    case RrcStatus::unsatisfied: return "unsatisfied";
    case RrcStatus::active: return "active";
    case RrcStatus::degraded: return "degraded";
  }
  return "unknown";
}

RrcStatus parse_rrc_status(std::string_view name) {
  for (RrcStatus s : {RrcStatus::unsatisfied, RrcStatus::active, RrcStatus::degraded}) {
    if (to_string(s) == name) return s;
  }
  throw Error(Errc::invalid_argument, "unknown RRC status '" + std::string(name) + "'");
}

const OfferingSelectionRule& Rrc::osr(const IngredientId& ingredient) const {
  static const OfferingSelectionRule kMatchAll{};
  const auto it = osrs.find(ingredient);
  return it == osrs.end() ? kMatchAll : it->second;
}

Rrc instantiate_rrc(const Rrc& rrc, const Recipe& recipe, const Registry& registry, const CategoryTaxonomy& taxonomy,
                    const std::set<OfferingId>& excluded) {
  Rrc out = rrc;
  out.assignment.clear();
  bool satisfied = true;
  for (const Ingredient& ingredient : recipe.ingredients) {
    const OfferingSelectionRule& osr = out.osr(ingredient.id);
    std::vector<OfferingId>& chosen = out.assignment[ingredient.id];
    for (const auto& [id, offering] : registry) {
      if (chosen.size() >= osr.cardinality.max) break;
      if (excluded.contains(id)) continue;
      if (match_offering(ingredient, offering, taxonomy) && evaluate_osr(osr, offering)) chosen.push_back(id);
    }
    if (chosen.size() < osr.cardinality.min) satisfied = false;
  }
  out.status = satisfied ? RrcStatus::active : RrcStatus::unsatisfied;
  return out;
}

std::vector<std::string> assignment_violations(const Rrc& rrc, const Recipe& recipe, const Registry& registry,
                                               const CategoryTaxonomy& taxonomy) {
  std::vector<std::string> out;
  for (const auto& [ingredient_id, offerings] : rrc.assignment) {
    if (recipe.ingredient(ingredient_id) == nullptr) out.push_back("unknown ingredient '" + ingredient_id + "'");
  }
  for (const Ingredient& ingredient : recipe.ingredients) {
    const OfferingSelectionRule& osr = rrc.osr(ingredient.id);
    const auto it = rrc.assignment.find(ingredient.id);
    const std::size_t n = it == rrc.assignment.end() ? 0 : it->second.size();
    if (n < osr.cardinality.min || n > osr.cardinality.max) {
      out.push_back("'" + ingredient.id + "' has " + std::to_string(n) + " offerings, outside [" +
                    std::to_string(osr.cardinality.min) + ", " + std::to_string(osr.cardinality.max) + "]");
    }
    if (it == rrc.assignment.end()) continue;
    for (const OfferingId& id : it->second) {
      const auto o = registry.find(id);
      if (o == registry.end()) {
        out.push_back("'" + ingredient.id + "' uses unregistered offering '" + id + "'");
      } else if (!match_offering(ingredient, o->second, taxonomy)) {
        out.push_back("'" + id + "' does not match ingredient '" + ingredient.id + "'");
      } else if (!evaluate_osr(osr, o->second)) {
        out.push_back("'" + id + "' fails the OSR of '" + ingredient.id + "'");
      }
    }
  }
  return out;
}

}  // namespace iotafd::choreo
