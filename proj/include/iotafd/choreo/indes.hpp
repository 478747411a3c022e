#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "iotafd/choreo/discovery.hpp"
#include "iotafd/choreo/monitoring.hpp"

namespace iotafd::choreo {

struct InputBinding {
  std::string port;  // local input
  Endpoint source;   // remote offering and output port
  std::string rrc;

  friend auto operator<=>(const InputBinding&, const InputBinding&) = default;
};

struct OutputTarget {
  std::string port;  // local output
  Endpoint target;   // remote offering and input port
  std::string rrc;

  friend auto operator<=>(const OutputTarget&, const OutputTarget&) = default;
};

struct MonitoringEntry {
  OfferingId monitored;
  std::string rrc;
  detectors::DetectorKind kind = detectors::DetectorKind::iota;
  detectors::DetectorConfig config;

  friend bool operator==(const MonitoringEntry&, const MonitoringEntry&) = default;
};

// Everything an engine needs to run its part of the choreography without the
// controller.
struct InteractionDescriptor {
  OfferingId offering;
  std::string category;
  std::vector<InputBinding> inputs;
  std::vector<OutputTarget> outputs;
  std::vector<MonitoringEntry> monitoring;
  std::vector<OfferingId> heartbeat_targets;  // who monitors this offering

  friend bool operator==(const InteractionDescriptor&, const InteractionDescriptor&) = default;
};

// Routing for one active RRC: every recipe interaction A.out -> B.in fans out
// over all offerings assigned to A and B. Monitoring comes from
// derive_rrc_links. Throws Errc::state if the RRC is not active.
std::map<OfferingId, InteractionDescriptor> generate_interaction_descriptors(const Rrc& rrc, const Recipe& recipe,
                                                                             const Registry& registry,
                                                                             const CategoryTaxonomy& taxonomy);

// Descriptors for every registered, non-failed offering: routing of all
// active RRCs merged, plus the given monitoring links (heartbeat targets are
// the inverse of the links).
std::map<OfferingId, InteractionDescriptor> build_descriptors(const std::map<std::string, Rrc>& rrcs,
                                                              const std::map<std::string, Recipe>& recipes,
                                                              const Registry& registry,
                                                              const CategoryTaxonomy& taxonomy,
                                                              const std::set<OfferingId>& failed,
                                                              const std::vector<MonitoringLink>& links);

}  // namespace iotafd::choreo
