#pragma once

#include <cstdint>

#include "iotafd/time.hpp"

namespace iotafd::detectors {

struct HeartbeatSample {
  TimestampMs timestamp = 0;
  std::uint64_t seq = 0;
  double resource_level = 1.0;  // fraction of critical resources left, in [0, 1]

  friend bool operator==(const HeartbeatSample&, const HeartbeatSample&) = default;
};

// Arrival bookkeeping shared by all detectors: rejects out-of-order samples
// and yields the inter-arrival time.
struct ArrivalClock {
  bool started = false;
  TimestampMs last_timestamp = 0;
  std::uint64_t last_seq = 0;

  // Throws Errc::ordering without mutating if hb does not strictly follow the
  // previous sample.
  void check(const HeartbeatSample& hb) const;

  // Returns the inter-arrival time, or -1 for the very first sample.
  DurationMs advance(const HeartbeatSample& hb);

  friend bool operator==(const ArrivalClock&, const ArrivalClock&) = default;
};

}  // namespace iotafd::detectors
