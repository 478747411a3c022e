#include "iotafd/detectors/resource.hpp"

#include <algorithm>

#include "iotafd/error.hpp"

namespace iotafd::detectors {

double lagrange_cubic(std::span<const double, 4> t, std::span<const double, 4> y, double x) {
  double sum = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double basis = 1.0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != j) basis *= (x - t[i]) / (t[j] - t[i]);
    }
    sum += y[j] * basis;
  }
  return sum;
}

void ResourceRing::push(const HeartbeatSample& hb) {
  if (count < samples.size()) {
    samples[count++] = hb;
    return;
  }
  std::shift_left(samples.begin(), samples.end(), 1);
  samples.back() = hb;
}

ResourceForecast ResourceRing::forecast(TimestampMs at) const {
  if (count < samples.size()) {
    throw Error(Errc::unavailable, "resource forecast needs 4 heartbeats, have " + std::to_string(count));
  }
  // Times relative to the newest sample keep the products well conditioned.
  const TimestampMs origin = samples.back().timestamp;
  std::array<double, 4> t{};
  std::array<double, 4> y{};
  for (std::size_t j = 0; j < 4; ++j) {
    t[j] = static_cast<double>(samples[j].timestamp - origin);
    y[j] = samples[j].resource_level;
  }
  const double raw = lagrange_cubic(t, y, static_cast<double>(at - origin));
  return {raw, std::clamp(raw, 0.0, 1.0)};
}

}  // namespace iotafd::detectors
