#pragma once

#include <cstdint>
#include <vector>

#include "iotafd/detectors/heartbeat.hpp"

namespace iotafd::simnet {

// Inter-arrival times are drawn i.i.d. from normal(mean, variance) and clamped
// below at clamp_floor. All quantities are in simulated time units.
struct TraceSpec {
  double mean = 1.0;
  double variance = 9.0;
  double duration = 5000.0;
  std::uint64_t seed = 1;
  double clamp_floor = 1e-3;

  // Throws Errc::invalid_argument.
  void validate() const;

  friend bool operator==(const TraceSpec&, const TraceSpec&) = default;
};

struct TracePoint {
  double time = 0.0;
  std::uint64_t seq = 0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

// Send times starting at 0 with seq 1, up to and including spec.duration.
std::vector<TracePoint> generate_heartbeat_trace(const TraceSpec& spec);

// Rounds each point to detector milliseconds. A point that would collide with
// its predecessor is moved to predecessor + 1 ms so timestamps stay strictly
// increasing.
std::vector<detectors::HeartbeatSample> to_heartbeat_samples(const std::vector<TracePoint>& trace);

// The millisecond stamp a receiver assigns to an arrival at `time`, given the
// previous stamp (or none).
TimestampMs arrival_millis(double time, const TimestampMs* previous);

}  // namespace iotafd::simnet
