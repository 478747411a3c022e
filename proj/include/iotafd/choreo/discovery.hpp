#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iotafd/choreo/model.hpp"
#include "iotafd/choreo/osr.hpp"
#include "iotafd/detectors/config.hpp"

namespace iotafd::choreo {

// Ingredient port name -> offering port name, per direction.
struct PortMapping {
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;

  friend bool operator==(const PortMapping&, const PortMapping&) = default;
};

// Category reachability plus a distinct offering port of the same type and
// direction for every ingredient port; ports are paired in declaration order.
// Throws Errc::taxonomy for unknown categories.
std::optional<PortMapping> map_ports(const Ingredient& ingredient, const Offering& offering,
                                     const CategoryTaxonomy& taxonomy);
bool match_offering(const Ingredient& ingredient, const Offering& offering, const CategoryTaxonomy& taxonomy);

enum class RrcStatus { unsatisfied, active, degraded };

std::string_view to_string(RrcStatus status) noexcept;
RrcStatus parse_rrc_status(std::string_view name);

// One instantiation of a recipe. The detector settings apply to every
// monitoring link the RRC gives rise to.
struct Rrc {
  std::string id;
  std::string recipe_id;
  std::map<IngredientId, OfferingSelectionRule> osrs;  // missing: match-all, cardinality (1, 1)
  std::map<IngredientId, std::vector<OfferingId>> assignment;
  RrcStatus status = RrcStatus::unsatisfied;
  detectors::DetectorKind detector_kind = detectors::DetectorKind::iota;
  detectors::DetectorConfig detector_config;

  const OfferingSelectionRule& osr(const IngredientId& ingredient) const;

  friend bool operator==(const Rrc&, const Rrc&) = default;
};

// Candidates pass match_offering and the OSR and are not excluded; the lowest
// ids are taken up to the maximum cardinality. Active iff every ingredient
// reaches its minimum, otherwise unsatisfied.
Rrc instantiate_rrc(const Rrc& rrc, const Recipe& recipe, const Registry& registry, const CategoryTaxonomy& taxonomy,
                    const std::set<OfferingId>& excluded = {});

// The reasons an assignment is not valid under the registry: an offering is
// missing, fails matching or its OSR, or a cardinality bound is broken.
std::vector<std::string> assignment_violations(const Rrc& rrc, const Recipe& recipe, const Registry& registry,
                                               const CategoryTaxonomy& taxonomy);

}  // namespace iotafd::choreo
