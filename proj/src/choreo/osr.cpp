#include "iotafd/choreo/osr.hpp"

#include <algorithm>

#include "iotafd/error.hpp"

namespace iotafd::choreo {

OsrExpr OsrExpr::compare(Op op, std::string key, PropertyValue value) {
  OsrExpr e;
  e.op = op;
  e.key = std::move(key);
  e.value = std::move(value);
  return e;
}

OsrExpr OsrExpr::all(std::vector<OsrExpr> children) {
  OsrExpr e;
  e.op = Op::all_of;
  e.children = std::move(children);
  return e;
}

OsrExpr OsrExpr::any(std::vector<OsrExpr> children) {
  OsrExpr e;
  e.op = Op::any_of;
  e.children = std::move(children);
  return e;
}

OsrExpr OsrExpr::negation(OsrExpr child) {
  OsrExpr e;
  e.op = Op::negate;
  e.children.push_back(std::move(child));
  return e;
}

void OsrExpr::collect_keys(std::vector<std::string>& out) const {
  switch (op) {
    case Op::always:
      return;
    case Op::all_of:
    case Op::any_of:
    case Op::negate:
      for (const auto& c : children) c.collect_keys(out);
      return;
    default:
      out.push_back(key);
  }
}

void OfferingSelectionRule::validate(const Ingredient& ingredient) const {
  if (cardinality.min > cardinality.max) {
    throw Error(Errc::invalid_argument, "OSR for '" + ingredient.id + "': cardinality min exceeds max");
  }
  if (ingredient.non_functional_keys.empty()) return;
  std::vector<std::string> keys;
  expr.collect_keys(keys);
  for (const auto& k : keys) {
    if (std::find(ingredient.non_functional_keys.begin(), ingredient.non_functional_keys.end(), k) ==
        ingredient.non_functional_keys.end()) {
      throw Error(Errc::invalid_argument, "OSR for '" + ingredient.id + "' references undeclared key '" + k + "'");
    }
  }
}

namespace {

template <typename T>
bool ordered(OsrExpr::Op op, const T& a, const T& b) {
  switch (op) {
    case OsrExpr::Op::lt: return a < b;
    case OsrExpr::Op::le: return a <= b;
    case OsrExpr::Op::gt: return a > b;
    case OsrExpr::Op::ge: return a >= b;
    default: return false;
  }
}

bool compare_leaf(const OsrExpr& e, const PropertyValue& actual) {
  if (actual.index() != e.value.index()) return false;
  switch (e.op) {
    case OsrExpr::Op::eq: return actual == e.value;
    case OsrExpr::Op::ne: return actual != e.value;
    default: break;
  }
  if (const auto* a = std::get_if<double>(&actual)) return ordered(e.op, *a, std::get<double>(e.value));
  if (const auto* a = std::get_if<std::string>(&actual)) return ordered(e.op, *a, std::get<std::string>(e.value));
  return false;
}

}  // namespace

bool evaluate_osr(const OsrExpr& expr, const Offering& offering) {
  using Op = OsrExpr::Op;
  switch (expr.op) {
    case Op::always:
      return true;
    case Op::all_of:
      return std::all_of(expr.children.begin(), expr.children.end(),
                         [&](const OsrExpr& c) { return evaluate_osr(c, offering); });
    case Op::any_of:
      return std::any_of(expr.children.begin(), expr.children.end(),
                         [&](const OsrExpr& c) { return evaluate_osr(c, offering); });
    case Op::negate:
      return !evaluate_osr(expr.children.at(0), offering);
    default: {
      const auto it = offering.properties.find(expr.key);
      return it != offering.properties.end() && compare_leaf(expr, it->second);
    }
  }
}

}  // namespace iotafd::choreo
