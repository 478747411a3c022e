#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "iotafd/choreo/taxonomy.hpp"

namespace iotafd::choreo {

using OfferingId = std::string;
using IngredientId = std::string;

struct Port {
  std::string name;
  std::string type;  // data-type identifier; connected ports must agree

  friend bool operator==(const Port&, const Port&) = default;
};

enum class Direction { input, output };

struct Ingredient {
  IngredientId id;
  CategoryId category;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::vector<std::string> non_functional_keys;

  const Port* port(Direction dir, const std::string& name) const;

  friend bool operator==(const Ingredient&, const Ingredient&) = default;
};

struct Endpoint {
  std::string node;  // ingredient or offering id
  std::string port;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Interaction {
  Endpoint from;  // output port
  Endpoint to;    // input port

  friend bool operator==(const Interaction&, const Interaction&) = default;
};

struct Recipe {
  std::string id;
  std::vector<Ingredient> ingredients;
  std::vector<Interaction> interactions;

  const Ingredient* ingredient(const IngredientId& id) const;

  // Endpoints exist, connected types agree, port names are unique per
  // ingredient, and the interaction graph is acyclic. Throws
  // Errc::invalid_argument.
  void validate() const;

  friend bool operator==(const Recipe&, const Recipe&) = default;
};

using PropertyValue = std::variant<bool, double, std::string>;

struct Offering {
  OfferingId id;
  CategoryId category;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
  std::map<std::string, PropertyValue> properties;

  const Port* port(Direction dir, const std::string& name) const;

  friend bool operator==(const Offering&, const Offering&) = default;
};

// Ordered by id, which is also the selection tie-break order.
using Registry = std::map<OfferingId, Offering>;

// Throws Errc::invalid_argument for an empty id or duplicate port names, and
// Errc::taxonomy for an unknown category.
void validate_offering(const Offering& offering, const CategoryTaxonomy& taxonomy);

}  // namespace iotafd::choreo
