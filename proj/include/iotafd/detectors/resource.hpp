#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "iotafd/detectors/heartbeat.hpp"

namespace iotafd::detectors {

struct ResourceForecast {
  double raw = 0.0;      // value of the interpolant
  double clamped = 0.0;  // raw clamped to [0, 1]
};

// Degree-3 Lagrange interpolant through (t[j], y[j]) evaluated at x. The t[j]
// must be distinct.
double lagrange_cubic(std::span<const double, 4> t, std::span<const double, 4> y, double x);

// The last four heartbeats, oldest first.
struct ResourceRing {
  std::array<HeartbeatSample, 4> samples{};
  std::uint8_t count = 0;

  void push(const HeartbeatSample& hb);

  // Throws Errc::unavailable with fewer than four samples.
  ResourceForecast forecast(TimestampMs at) const;

  friend bool operator==(const ResourceRing&, const ResourceRing&) = default;
};

}  // namespace iotafd::detectors
