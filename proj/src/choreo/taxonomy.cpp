#include "iotafd/choreo/taxonomy.hpp"

#include "iotafd/error.hpp"

namespace iotafd::choreo {

void CategoryTaxonomy::add_category(const CategoryId& name, const std::vector<CategoryId>& parents) {
  if (name.empty()) throw Error(Errc::taxonomy, "category name must not be empty");
  if (contains(name)) throw Error(Errc::taxonomy, "category '" + name + "' is already defined");
  for (const auto& p : parents) require(p);
  parents_.emplace(name, parents);
}

void CategoryTaxonomy::require(const CategoryId& name) const {
  if (!contains(name)) throw Error(Errc::taxonomy, "unknown category '" + name + "'");
}

bool CategoryTaxonomy::is_a(const CategoryId& category, const CategoryId& ancestor) const {
  require(category);
  require(ancestor);
  std::vector<const CategoryId*> stack{&category};
  std::set<CategoryId> seen;
  while (!stack.empty()) {
    const CategoryId& c = *stack.back();
    stack.pop_back();
    if (c == ancestor) return true;
    if (!seen.insert(c).second) continue;
    for (const auto& p : parents_.at(c)) stack.push_back(&p);
  }
  return false;
}

}  // namespace iotafd::choreo
