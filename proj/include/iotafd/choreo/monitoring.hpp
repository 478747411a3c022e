#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "iotafd/choreo/discovery.hpp"
#include "iotafd/detectors/config.hpp"

namespace iotafd::choreo {

struct MonitoringLink {
  OfferingId monitor;
  OfferingId monitored;
  std::string rrc;  // empty for the unused-offering ring
  detectors::DetectorKind kind = detectors::DetectorKind::iota;
  detectors::DetectorConfig config;

  friend bool operator==(const MonitoringLink&, const MonitoringLink&) = default;
};

// Offering-level dataflow edges of an RRC (deduplicated, ordered).
std::vector<std::pair<OfferingId, OfferingId>> dataflow_edges(const Rrc& rrc, const Recipe& recipe);

// For each dataflow edge a -> b, b monitors a. For every source s (no
// incoming edge) and sink t (no outgoing edge) with t reachable from s, s
// monitors t, closing each chain.
std::vector<MonitoringLink> derive_rrc_links(const Rrc& rrc, const Recipe& recipe);

// Offerings that are registered, not failed and not assigned in an active RRC.
std::vector<OfferingId> unused_offerings(const std::map<std::string, Rrc>& rrcs, const Registry& registry,
                                         const std::set<OfferingId>& failed);

// Sorted unused offerings each monitor their successor, wrapping around. A
// single offering forms no ring.
std::vector<MonitoringLink> derive_ring_links(const std::vector<OfferingId>& unused, detectors::DetectorKind kind,
                                              const detectors::DetectorConfig& config);

// All links of active RRCs plus the ring. The ring covers the unused
// offerings and also assigned offerings that no RRC link touches (an RRC whose
// recipe has no interactions), so every live offering is observed once two
// such offerings exist.
std::vector<MonitoringLink> derive_monitoring_links(const std::map<std::string, Rrc>& rrcs,
                                                    const std::map<std::string, Recipe>& recipes,
                                                    const Registry& registry, const std::set<OfferingId>& failed,
                                                    detectors::DetectorKind ring_kind,
                                                    const detectors::DetectorConfig& ring_config);

}  // namespace iotafd::choreo
