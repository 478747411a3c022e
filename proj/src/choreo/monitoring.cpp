#include "iotafd/choreo/monitoring.hpp"

#include <algorithm>

#include "iotafd/error.hpp"

namespace iotafd::choreo {
namespace {

const std::vector<OfferingId>& assigned(const Rrc& rrc, const IngredientId& ingredient) {
  static const std::vector<OfferingId> kNone;
  const auto it = rrc.assignment.find(ingredient);
  return it == rrc.assignment.end() ? kNone : it->second;
}

}  // namespace

std::vector<std::pair<OfferingId, OfferingId>> dataflow_edges(const Rrc& rrc, const Recipe& recipe) {
  std::set<std::pair<OfferingId, OfferingId>> edges;
  for (const Interaction& x : recipe.interactions) {
    for (const auto& a : assigned(rrc, x.from.node)) {
      for (const auto& b : assigned(rrc, x.to.node)) {
        if (a != b) edges.emplace(a, b);
      }
    }
  }
  return {edges.begin(), edges.end()};
}

std::vector<MonitoringLink> derive_rrc_links(const Rrc& rrc, const Recipe& recipe) {
  const auto edges = dataflow_edges(rrc, recipe);
  std::set<OfferingId> nodes;
  for (const auto& [ingredient, offerings] : rrc.assignment) nodes.insert(offerings.begin(), offerings.end());
  std::map<OfferingId, std::vector<OfferingId>> next;
  std::set<OfferingId> has_in;
  for (const auto& [a, b] : edges) {
    next[a].push_back(b);
    has_in.insert(b);
  }

  std::set<std::pair<OfferingId, OfferingId>> pairs;  // (monitor, monitored)
  for (const auto& [a, b] : edges) pairs.emplace(b, a);
  for (const OfferingId& s : nodes) {
    if (has_in.contains(s)) continue;
    std::set<OfferingId> seen{s};
    std::vector<OfferingId> stack{s};
    while (!stack.empty()) {
      const OfferingId n = stack.back();
      stack.pop_back();
      const auto it = next.find(n);
      if (it == next.end()) {
        if (n != s) pairs.emplace(s, n);  // n is a sink reachable from s
        continue;
      }
      for (const auto& m : it->second) {
        if (seen.insert(m).second) stack.push_back(m);
      }
    }
  }

  std::vector<MonitoringLink> links;
  for (const auto& [monitor, monitored] : pairs) {
    links.push_back({monitor, monitored, rrc.id, rrc.detector_kind, rrc.detector_config});
  }
  return links;
}

std::vector<OfferingId> unused_offerings(const std::map<std::string, Rrc>& rrcs, const Registry& registry,
                                         const std::set<OfferingId>& failed) {
  std::set<OfferingId> used;
  for (const auto& [id, rrc] : rrcs) {
    if (rrc.status != RrcStatus::active) continue;
    for (const auto& [ingredient, offerings] : rrc.assignment) used.insert(offerings.begin(), offerings.end());
  }
  std::vector<OfferingId> out;
  for (const auto& [id, offering] : registry) {
    if (!failed.contains(id) && !used.contains(id)) out.push_back(id);
  }
  return out;
}

std::vector<MonitoringLink> derive_ring_links(const std::vector<OfferingId>& unused, detectors::DetectorKind kind,
                                              const detectors::DetectorConfig& config) {
  std::vector<OfferingId> sorted = unused;
  std::sort(sorted.begin(), sorted.end());
  std::vector<MonitoringLink> links;
  if (sorted.size() < 2) return links;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    links.push_back({sorted[i], sorted[(i + 1) % sorted.size()], "", kind, config});
  }
  return links;
}

std::vector<MonitoringLink> derive_monitoring_links(const std::map<std::string, Rrc>& rrcs,
                                                    const std::map<std::string, Recipe>& recipes,
                                                    const Registry& registry, const std::set<OfferingId>& failed,
                                                    detectors::DetectorKind ring_kind,
                                                    const detectors::DetectorConfig& ring_config) {
  std::vector<MonitoringLink> links;
  for (const auto& [id, rrc] : rrcs) {
    if (rrc.status != RrcStatus::active) continue;
    const auto recipe = recipes.find(rrc.recipe_id);
    if (recipe == recipes.end()) {
      throw Error(Errc::invalid_argument, "RRC '" + id + "' references unknown recipe '" + rrc.recipe_id + "'");
    }
    const auto rrc_links = derive_rrc_links(rrc, recipe->second);
    links.insert(links.end(), rrc_links.begin(), rrc_links.end());
  }
  std::set<OfferingId> covered;
  for (const auto& l : links) {
    covered.insert(l.monitor);
    covered.insert(l.monitored);
  }
  std::vector<OfferingId> spare;
  for (const auto& [id, offering] : registry) {
    if (!failed.contains(id) && !covered.contains(id)) spare.push_back(id);
  }
  const auto ring = derive_ring_links(spare, ring_kind, ring_config);
  links.insert(links.end(), ring.begin(), ring.end());
  return links;
}

}  // namespace iotafd::choreo
