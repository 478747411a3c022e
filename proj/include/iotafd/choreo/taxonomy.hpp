#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace iotafd::choreo {

using CategoryId = std::string;

// Category DAG; an edge child -> parent reads "child is-a parent".
class CategoryTaxonomy {
 public:
  // Parents must already exist. Throws Errc::taxonomy on an unknown parent or
  // a duplicate name (which is the only way a cycle could be introduced).
  void add_category(const CategoryId& name, const std::vector<CategoryId>& parents = {});

  bool contains(const CategoryId& name) const { return parents_.contains(name); }

  // Reflexive, transitive is-a. Throws Errc::taxonomy for unknown categories.
  bool is_a(const CategoryId& category, const CategoryId& ancestor) const;

  const std::map<CategoryId, std::vector<CategoryId>>& categories() const noexcept { return parents_; }

  friend bool operator==(const CategoryTaxonomy&, const CategoryTaxonomy&) = default;

 private:
  void require(const CategoryId& name) const;

  std::map<CategoryId, std::vector<CategoryId>> parents_;
};

}  // namespace iotafd::choreo
