#include "iotafd/runtime/behavior.hpp"

#include <array>
#include <set>
#include <vector>

#include "iotafd/error.hpp"

namespace iotafd::runtime {
namespace {

constexpr std::array<std::string_view, 4> kBuiltins{"toggle", "record", "passthrough", "and"};

const Value* first_value(const Activation& a) {
  if (a.stimulus) return &*a.stimulus;
  if (!a.inputs.empty()) return &a.inputs.begin()->second;
  return nullptr;
}

std::optional<Value> toggle(const Activation& a, Value& state) {
  const Value* v = first_value(a);
  const bool on = v != nullptr && v->is_boolean() ? v->get<bool>() : !state.value("on", false);
  state["on"] = on;
  return Value(on);
}

std::optional<Value> record(const Activation& a, Value& state) {
  if (a.inputs.empty()) return std::nullopt;
  Value v;
  if (a.inputs.size() == 1) {
    v = a.inputs.begin()->second;
  } else {
    v = Value::object();
    for (const auto& [port, x] : a.inputs) v[port] = x;
  }
  state["value"] = v;
  state["updates"] = state.value("updates", 0) + 1;
  return v;
}

std::optional<Value> passthrough(const Activation& a, Value&) {
  const Value* v = first_value(a);
  if (v == nullptr) return std::nullopt;
  return *v;
}

std::optional<Value> conjunction(const Activation& a, Value&) {
  if (a.inputs.empty()) return std::nullopt;
  bool all = true;
  for (const auto& [port, x] : a.inputs) all = all && x.is_boolean() && x.get<bool>();
  return Value(all);
}

}  // namespace

bool is_builtin_behavior(std::string_view name) noexcept {
  for (auto b : kBuiltins) {
    if (b == name) return true;
  }
  return false;
}

Behavior builtin_behavior(std::string_view name) {
  if (name == "toggle") return toggle;
  if (name == "record") return record;
  if (name == "passthrough") return passthrough;
  if (name == "and") return conjunction;
  throw Error(Errc::invalid_argument, "unknown behavior '" + std::string(name) + "'");
}

void BehaviorTable::assign(const choreo::CategoryId& category, std::string name) {
  if (!is_builtin_behavior(name)) throw Error(Errc::invalid_argument, "unknown behavior '" + name + "'");
  names_[category] = std::move(name);
}

std::string BehaviorTable::resolve_name(const choreo::CategoryId& category,
                                        const choreo::CategoryTaxonomy& taxonomy) const {
  // Breadth-first over parents so the nearest assigned ancestor wins.
  std::vector<choreo::CategoryId> frontier{category};
  std::set<choreo::CategoryId> seen{category};
  while (!frontier.empty()) {
    std::vector<choreo::CategoryId> next;
    for (const auto& c : frontier) {
      const auto it = names_.find(c);
      if (it != names_.end()) return it->second;
      const auto parents = taxonomy.categories().find(c);
      if (parents == taxonomy.categories().end()) continue;
      for (const auto& p : parents->second) {
        if (seen.insert(p).second) next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  return "passthrough";
}

}  // namespace iotafd::runtime
