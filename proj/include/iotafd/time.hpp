#pragma once

#include <cmath>
#include <cstdint>

namespace iotafd {

// Detector clocks are integer milliseconds; simulated time is a real-valued
// quantity measured in "time units" (one unit = one second = 1000 ms).
using TimestampMs = std::int64_t;
using DurationMs = std::int64_t;

inline constexpr double kMillisPerUnit = 1000.0;

// Rounds half-up at the delivery boundary.
inline TimestampMs to_millis(double units) {
  return static_cast<TimestampMs>(std::floor(units * kMillisPerUnit + 0.5));
}

inline double to_units(DurationMs ms) { return static_cast<double>(ms) / kMillisPerUnit; }

}  // namespace iotafd
