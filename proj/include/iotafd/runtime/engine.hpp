#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iotafd/choreo/indes.hpp"
#include "iotafd/detectors/any_detector.hpp"
#include "iotafd/random.hpp"
#include "iotafd/runtime/behavior.hpp"
#include "iotafd/simnet/simulator.hpp"

namespace iotafd::runtime {

inline const simnet::NodeId kControllerId = "controller";

struct EngineOptions {
  double heartbeat_period = 1.0;  // time units
  double heartbeat_jitter = 0.0;  // standard deviation of each period, time units
  double monitor_period = 0.1;    // suspicion is evaluated on this grid
  double link_delay = 0.0;        // heartbeat and data latency
  std::uint64_t seed = 0;         // phase and jitter stream
};

struct Emission {
  choreo::OfferingId target;
  std::string port;  // target input port
  Value value;
};

struct Notification {
  choreo::OfferingId monitored;
  std::string rrc;
  double suspicion = 0.0;
  double time = 0.0;
};

// The per-offering runtime. Once it holds an InDes it routes data and
// monitors its peers on its own; the only message it sends the controller is
// a failure notification.
class Engine final : public simnet::Node {
 public:
  using LinkKey = std::pair<choreo::OfferingId, std::string>;  // (monitored, rrc)

  Engine(choreo::Offering offering, Behavior behavior, EngineOptions options);

  const simnet::NodeId& id() const override { return offering_.id; }
  void start(simnet::Simulator& sim) override;
  void handle(const simnet::SimEvent& event, simnet::Simulator& sim) override;

  // Replaces the descriptor. The input buffer starts empty; detectors of links
  // that survive unchanged keep their state, others are created or dropped.
  void install(choreo::InteractionDescriptor descriptor);

  // Stores the value; once every bound input holds one, runs the behaviour,
  // clears the buffer and returns one emission per output target. Throws
  // Errc::routing for a port without a binding.
  std::vector<Emission> process_input(const std::string& port, const Value& value);
  std::vector<Emission> process_stimulus(const Value& value);

  // Feeds every link that monitors `from`.
  void receive_heartbeat(const choreo::OfferingId& from, double time, std::uint64_t seq);

  // One notification per false -> true transition of a link's verdict.
  std::vector<Notification> monitor_tick(double now);

  const choreo::Offering& offering() const noexcept { return offering_; }
  void set_offering(choreo::Offering offering) { offering_ = std::move(offering); }
  const std::optional<choreo::InteractionDescriptor>& descriptor() const noexcept { return descriptor_; }
  const std::map<std::string, Value>& buffer() const noexcept { return buffer_; }
  const Value& state() const noexcept { return state_; }
  bool failed() const noexcept { return failed_; }
  std::vector<LinkKey> monitored_links() const;
  bool suspects(const LinkKey& link) const;

  Value dump() const;

 private:
  struct Link {
    choreo::MonitoringEntry entry;
    detectors::AnyDetector detector;
    bool suspected = false;
  };

  std::vector<Emission> emit(const std::optional<Value>& value) const;
  void send(const std::vector<Emission>& emissions, simnet::Simulator& sim) const;

  choreo::Offering offering_;
  Behavior behavior_;
  EngineOptions options_;
  Rng rng_;
  std::optional<choreo::InteractionDescriptor> descriptor_;
  std::map<std::string, Value> buffer_;
  Value state_ = Value::object();
  std::map<LinkKey, Link> links_;
  std::uint64_t next_seq_ = 1;
  bool failed_ = false;
};

}  // namespace iotafd::runtime
