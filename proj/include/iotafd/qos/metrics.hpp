#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "iotafd/detectors/any_detector.hpp"
#include "iotafd/simnet/simulator.hpp"

namespace iotafd::qos {

// What a monitor observed during one run: heartbeat arrivals, when the
// monitored node crashed (if it did), and the end of the observation horizon.
// The run covers the integer instants [0, end).
struct HeartbeatLog {
  std::vector<detectors::HeartbeatSample> arrivals;
  std::optional<TimestampMs> crash;
  TimestampMs end = 0;
};

// Extracts the arrivals delivered to `monitor` from a simulator event log.
HeartbeatLog heartbeat_log_from_events(const simnet::EventLog& log, const simnet::NodeId& monitor,
                                       std::optional<TimestampMs> crash, TimestampMs end);

// Exact integer counts for one threshold over one run.
struct ThresholdMetrics {
  double threshold = 0.0;
  std::uint64_t mistakes = 0;        // false-to-true transitions while alive
  DurationMs alive_ms = 0;
  std::optional<DurationMs> detection_ms;  // empty when censored or no crash
  bool censored = false;                   // crashed but not suspected at the end
  std::uint64_t correct_samples = 0;
  std::uint64_t samples = 0;

  double mistake_rate() const;     // per time unit
  double query_accuracy() const;
  std::optional<double> detection_time() const;  // time units

  friend bool operator==(const ThresholdMetrics&, const ThresholdMetrics&) = default;
};

// Replays the run once and evaluates every threshold. Queries are sampled at
// multiples of sampling_period_ms.
std::vector<ThresholdMetrics> evaluate_thresholds(const HeartbeatLog& log, detectors::DetectorKind kind,
                                                  const detectors::DetectorConfig& config,
                                                  std::span<const double> thresholds, DurationMs sampling_period_ms);

// Single-threshold views. detection time is in time units; empty if censored.
// Throws Errc::invalid_argument if the log has no crash.
std::optional<double> compute_detection_time(const HeartbeatLog& log, detectors::DetectorKind kind,
                                             const detectors::DetectorConfig& config, double threshold);
double compute_mistake_rate(const HeartbeatLog& log, detectors::DetectorKind kind,
                            const detectors::DetectorConfig& config, double threshold);
double compute_query_accuracy(const HeartbeatLog& log, detectors::DetectorKind kind,
                              const detectors::DetectorConfig& config, double threshold,
                              DurationMs sampling_period_ms);

}  // namespace iotafd::qos
