#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "iotafd/detectors/config.hpp"
#include "iotafd/qos/metrics.hpp"
#include "iotafd/simnet/loss.hpp"
#include "iotafd/simnet/trace.hpp"

namespace iotafd::qos {

struct DetectorSweep {
  detectors::DetectorKind kind = detectors::DetectorKind::iota;
  detectors::DetectorConfig config;
  std::vector<double> thresholds;  // strictly increasing, >= 0
};

// Every detector is evaluated on the same `trials` seeded runs. The monitored
// node crashes at crash_time (default: the end of the trace) and the run is
// observed for post_crash_horizon units after that.
struct SweepSpec {
  std::uint64_t seed = 42;
  std::uint64_t trials = 20;
  simnet::TraceSpec trace;
  std::optional<simnet::BurstLossModel> loss = simnet::BurstLossModel{};
  std::optional<double> crash_time;
  double post_crash_horizon = 500.0;
  double query_period = 0.1;
  std::vector<DetectorSweep> detectors;

  double effective_crash_time() const { return crash_time.value_or(trace.duration); }

  // Throws ConfigError naming the offending field.
  void validate() const;
};

SweepSpec parse_sweep_spec(const nlohmann::json& document);

// Per-trial seeds, derived from the master seed.
std::uint64_t trial_trace_seed(std::uint64_t master, std::uint64_t trial);
std::uint64_t trial_loss_seed(std::uint64_t master, std::uint64_t trial);

// The arrivals a monitor sees in one trial: trace, burst loss, and nothing
// sent after the crash.
HeartbeatLog make_trial_log(const SweepSpec& spec, std::uint64_t trial);

// Metrics for one (detector, threshold) point, aggregated over trials: mean
// detection time over uncensored trials, total mistakes over total alive
// time, and correct samples over all samples.
struct QosReport {
  detectors::DetectorKind detector = detectors::DetectorKind::iota;
  double threshold = 0.0;
  std::optional<double> detection_time;  // empty when every trial was censored
  double mistake_rate = 0.0;
  double query_accuracy = 0.0;
  std::uint64_t censored = 0;  // trials without a permanent detection

  friend bool operator==(const QosReport&, const QosReport&) = default;
};

struct SweepResult {
  std::vector<QosReport> reports;  // detector order of the spec, thresholds ascending
  nlohmann::json metadata;

  std::vector<QosReport> for_detector(detectors::DetectorKind kind) const;
};

SweepResult sweep_thresholds(const SweepSpec& spec);

// Seeds, window sizes and every other knob behind a sweep.
nlohmann::json run_metadata(const SweepSpec& spec);

// Header: detector,threshold,detection_time,mistake_rate,query_accuracy,censored
std::string curve_csv(const std::vector<QosReport>& reports);

// Shortest round-trip decimal form; "inf" and "nan" for the special values.
std::string format_number(double value);

}  // namespace iotafd::qos
