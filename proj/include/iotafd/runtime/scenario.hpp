#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iotafd/choreo/json_io.hpp"
#include "iotafd/config_reader.hpp"
#include "iotafd/runtime/behavior.hpp"
#include "iotafd/runtime/controller.hpp"
#include "iotafd/runtime/engine.hpp"
#include "iotafd/simnet/simulator.hpp"

namespace iotafd::runtime {

struct RegistrationSpec {
  double time = 0.0;
  choreo::Offering offering;
};

struct CrashSpec {
  double time = 0.0;
  choreo::OfferingId offering;
};

// A stimulus at `time`, repeated every `every` units up to `until` when
// `every` > 0. A null value toggles.
struct StimulusSpec {
  double time = 0.0;
  choreo::OfferingId offering;
  Value value;
  double every = 0.0;
  double until = 0.0;
};

struct ScenarioAssertions {
  std::optional<double> failover_deadline;  // time units, crash to last recovery distribution
  bool revalidate = true;                    // active RRCs must satisfy their OSRs at the end
  std::map<std::string, choreo::RrcStatus> statuses;
};

struct Scenario {
  std::uint64_t seed = 1;
  double horizon = 120.0;
  EngineOptions engine;
  ControllerOptions controller;
  BehaviorTable behaviors;
  choreo::Choreography choreography;  // registry unused: offerings arrive via registrations
  std::vector<RegistrationSpec> registrations;
  std::vector<CrashSpec> crashes;
  std::vector<StimulusSpec> stimuli;
  ScenarioAssertions assertions;
};

// The scenario document: the choreography fields plus "seed", "horizon",
// "heartbeat", "control_latency", "ring_detector", "behaviors",
// "registrations", "crashes", "stimuli" and "assertions". Offerings listed
// under "offerings" register at their "register_at" time (default 0).
Scenario read_scenario(const ConfigNode& node);

struct FailoverReport {
  choreo::OfferingId failed;
  double crash_time = 0.0;
  bool was_assigned = false;             // part of an active RRC when it crashed
  std::optional<double> detected_at;     // controller handled the notification
  std::optional<double> completed_at;    // last recovery distribution delivered, all RRCs active again
  bool revalidated = false;              // recovered assignments satisfy OSRs and cardinality

  std::optional<double> duration() const {
    if (!completed_at) return std::nullopt;
    return *completed_at - crash_time;
  }
};

struct ScenarioResult {
  simnet::EventLog log;
  Value controller_state;
  std::map<choreo::OfferingId, Value> engines;
  std::vector<FailoverReport> failovers;
  std::vector<std::string> assertion_failures;
};

ScenarioResult run_scenario(const Scenario& scenario);

}  // namespace iotafd::runtime
