#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "iotafd/choreo/model.hpp"

namespace iotafd::choreo {

// Expression tree over an offering's non-functional properties.
struct OsrExpr {
  enum class Op { always, all_of, any_of, negate, eq, ne, lt, le, gt, ge };

  Op op = Op::always;
  std::string key;                // comparison leaves
  PropertyValue value;            // comparison leaves
  std::vector<OsrExpr> children;  // all_of, any_of; negate has exactly one

  static OsrExpr compare(Op op, std::string key, PropertyValue value);
  static OsrExpr all(std::vector<OsrExpr> children);
  static OsrExpr any(std::vector<OsrExpr> children);
  static OsrExpr negation(OsrExpr child);

  // Keys referenced anywhere in the tree.
  void collect_keys(std::vector<std::string>& out) const;

  friend bool operator==(const OsrExpr&, const OsrExpr&) = default;
};

struct Cardinality {
  std::uint64_t min = 1;
  std::uint64_t max = 1;

  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

struct OfferingSelectionRule {
  OsrExpr expr;
  Cardinality cardinality;

  // min <= max, and (if the ingredient declares its keys) only declared keys
  // are referenced. Throws Errc::invalid_argument.
  void validate(const Ingredient& ingredient) const;

  friend bool operator==(const OfferingSelectionRule&, const OfferingSelectionRule&) = default;
};

// A comparison leaf on a key the offering does not declare is false, as is a
// comparison between values of different types. lt/le/gt/ge compare numbers
// and strings; booleans only support eq/ne.
bool evaluate_osr(const OsrExpr& expr, const Offering& offering);
inline bool evaluate_osr(const OfferingSelectionRule& osr, const Offering& offering) {
  return evaluate_osr(osr.expr, offering);
}

}  // namespace iotafd::choreo
