#pragma once

#include <optional>
#include <vector>

#include "iotafd/detectors/any_detector.hpp"
#include "iotafd/simnet/loss.hpp"
#include "iotafd/simnet/simulator.hpp"

namespace iotafd::simnet {

// Sends one heartbeat per trace point to `target`; packets lost by the burst
// process are sent but never delivered.
class HeartbeatSender final : public Node {
 public:
  HeartbeatSender(NodeId id, NodeId target, std::vector<TracePoint> trace, std::optional<BurstLossModel> loss,
                  double link_delay = 0.0);

  const NodeId& id() const override { return id_; }
  void start(Simulator& sim) override;
  void handle(const SimEvent& event, Simulator& sim) override;

 private:
  NodeId id_;
  NodeId target_;
  std::vector<TracePoint> trace_;
  std::optional<BurstLossProcess> loss_;
  double link_delay_;
};

// Feeds arrivals to a detector and answers periodic queries.
class HeartbeatMonitor final : public Node {
 public:
  struct Verdict {
    double time = 0.0;
    bool suspected = false;

    friend bool operator==(const Verdict&, const Verdict&) = default;
  };

  HeartbeatMonitor(NodeId id, detectors::AnyDetector detector, double query_period = 0.0);

  const NodeId& id() const override { return id_; }
  void start(Simulator& sim) override;
  void handle(const SimEvent& event, Simulator& sim) override;

  const detectors::AnyDetector& detector() const noexcept { return detector_; }
  const std::vector<detectors::HeartbeatSample>& arrivals() const noexcept { return arrivals_; }
  const std::vector<Verdict>& verdicts() const noexcept { return verdicts_; }

 private:
  NodeId id_;
  detectors::AnyDetector detector_;
  double query_period_;
  std::vector<detectors::HeartbeatSample> arrivals_;
  std::vector<Verdict> verdicts_;
};

}  // namespace iotafd::simnet
