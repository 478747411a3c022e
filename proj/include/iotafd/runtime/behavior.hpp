#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "iotafd/choreo/taxonomy.hpp"

namespace iotafd::runtime {

using Value = nlohmann::json;

// One activation of an offering: either a complete set of bound inputs or an
// external stimulus (a button press, a sensor reading).
struct Activation {
  std::map<std::string, Value> inputs;  // offering input port -> value
  std::optional<Value> stimulus;
};

// A simulated offering computation. It may update the offering's local state
// and returns the value to send on every output port, if any.
using Behavior = std::function<std::optional<Value>(const Activation&, Value& state)>;

// Built-in behaviours:
//   toggle       flips state.on (or sets it to a boolean stimulus/input) and emits it
//   record       stores the input in state.value, counts state.updates, emits it
//   passthrough  emits the single input or the stimulus unchanged
//   and          emits the conjunction of boolean inputs
// Throws Errc::invalid_argument for other names.
Behavior builtin_behavior(std::string_view name);
bool is_builtin_behavior(std::string_view name) noexcept;

// Behaviour names keyed by category. Lookup walks from the offering's
// category towards the roots, nearest first; unmatched categories get
// passthrough.
class BehaviorTable {
 public:
  void assign(const choreo::CategoryId& category, std::string name);
  std::string resolve_name(const choreo::CategoryId& category, const choreo::CategoryTaxonomy& taxonomy) const;
  Behavior resolve(const choreo::CategoryId& category, const choreo::CategoryTaxonomy& taxonomy) const {
    return builtin_behavior(resolve_name(category, taxonomy));
  }
  const std::map<choreo::CategoryId, std::string>& names() const noexcept { return names_; }

 private:
  std::map<choreo::CategoryId, std::string> names_;
};

}  // namespace iotafd::runtime
