#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "iotafd/choreo/indes.hpp"
#include "iotafd/choreo/json_io.hpp"
#include "iotafd/choreo/monitoring.hpp"
#include "iotafd/runtime/engine.hpp"
#include "iotafd/simnet/simulator.hpp"

namespace iotafd::runtime {

struct ControllerOptions {
  detectors::DetectorKind ring_kind = detectors::DetectorKind::iota;
  detectors::DetectorConfig ring_config;
  double control_latency = 0.0;  // delay of distribute messages
};

// What the controller did about one failure notification.
struct Recovery {
  choreo::OfferingId failed;
  choreo::OfferingId reported_by;
  double time = 0.0;
  std::map<std::string, choreo::RrcStatus> rrcs;  // RRCs that contained the failed offering, after recovery
  std::vector<choreo::OfferingId> distributed;
  std::vector<std::string> violations;  // re-validation right after recovery
};

// Registry, discovery and recovery. Mutations are serialized: each call runs
// to completion before the next one starts.
class Controller final : public simnet::Node {
 public:
  Controller(choreo::CategoryTaxonomy taxonomy, std::map<std::string, choreo::Recipe> recipes,
             std::map<std::string, choreo::Rrc> rrcs, ControllerOptions options = {});

  const simnet::NodeId& id() const override { return kControllerId; }
  void handle(const simnet::SimEvent& event, simnet::Simulator& sim) override;

  // Inserts or replaces the offering (clearing a failed mark), re-runs
  // discovery for every RRC and returns the descriptors that changed. Throws
  // without touching the registry if the description is invalid.
  std::vector<choreo::InteractionDescriptor> register_offering(const choreo::Offering& offering);

  // Marks the offering failed, re-runs discovery for the RRCs that contained
  // it and returns the descriptors that changed. An unknown or already failed
  // id changes nothing (the former adds a warning).
  std::vector<choreo::InteractionDescriptor> handle_failure(const choreo::OfferingId& failed,
                                                            const choreo::OfferingId& reported_by = {},
                                                            double time = 0.0);

  const choreo::CategoryTaxonomy& taxonomy() const noexcept { return taxonomy_; }
  const std::map<std::string, choreo::Recipe>& recipes() const noexcept { return recipes_; }
  const choreo::Registry& registry() const noexcept { return registry_; }
  const std::map<std::string, choreo::Rrc>& rrcs() const noexcept { return rrcs_; }
  const std::set<choreo::OfferingId>& failed() const noexcept { return failed_; }
  const std::vector<choreo::MonitoringLink>& links() const noexcept { return links_; }
  const std::map<choreo::OfferingId, choreo::InteractionDescriptor>& descriptors() const noexcept {
    return distributed_;
  }
  const std::vector<Recovery>& recoveries() const noexcept { return recoveries_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Re-validation of every active RRC against the current registry.
  std::vector<std::string> consistency_violations() const;

  Value dump() const;

 private:
  choreo::Rrc rediscover(const choreo::Rrc& rrc) const;
  std::vector<choreo::InteractionDescriptor> redistribute();
  void distribute(const std::vector<choreo::InteractionDescriptor>& changed, const std::string& cause,
                  simnet::Simulator& sim);

  choreo::CategoryTaxonomy taxonomy_;
  std::map<std::string, choreo::Recipe> recipes_;
  std::map<std::string, choreo::Rrc> rrcs_;
  ControllerOptions options_;
  choreo::Registry registry_;
  std::set<choreo::OfferingId> failed_;
  std::vector<choreo::MonitoringLink> links_;
  std::map<choreo::OfferingId, choreo::InteractionDescriptor> distributed_;
  std::deque<simnet::SimEvent> pending_;
  std::vector<Recovery> recoveries_;
  std::vector<std::string> warnings_;
};

}  // namespace iotafd::runtime
