#include "iotafd/detectors/suspicion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iotafd/detectors/config.hpp"
#include "iotafd/simd/count.hpp"

namespace iotafd::detectors {

double chebyshev_suspicion(double mean, double variance, double elapsed) noexcept {
  const double d = elapsed - mean;
  if (!(d > 0.0)) return 0.0;
  const double v = std::max(variance, kVarianceFloor);
  return -std::log10(v / (v + d * d));
}

double normal_suspicion(double mean, double variance, double elapsed) noexcept {
  const double sigma = std::sqrt(std::max(variance, kVarianceFloor));
  const double tail = 0.5 * std::erfc((elapsed - mean) / (sigma * std::numbers::sqrt2));
  return std::max(0.0, -std::log10(tail));
}

double empirical_suspicion(std::span<const std::int64_t> window, std::int64_t elapsed) noexcept {
  return static_cast<double>(simd::count_less_equal(window, elapsed)) / static_cast<double>(window.size());
}

}  // namespace iotafd::detectors
