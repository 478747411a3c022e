#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace iotafd::detectors {

// One-sided Chebyshev bound: -log10(v / (v + d^2)) with d = elapsed - mean and
// v = max(variance, kVarianceFloor). Zero when the heartbeat is not overdue
// (d <= 0).
double chebyshev_suspicion(double mean, double variance, double elapsed) noexcept;

// Phi: -log10(1 - F(elapsed)) with F the normal CDF of the given mean and
// (floored) variance. The tail is computed with erfc so large values stay
// accurate.
double normal_suspicion(double mean, double variance, double elapsed) noexcept;

// Fraction of window entries <= elapsed. window must be non-empty.
double empirical_suspicion(std::span<const std::int64_t> window, std::int64_t elapsed) noexcept;

// s >= U, except that an infinite U is never reached (phi's tail can
// underflow to an infinite suspicion).
inline bool reaches_threshold(double suspicion, double threshold) noexcept {
  return threshold != std::numeric_limits<double>::infinity() && suspicion >= threshold;
}

}  // namespace iotafd::detectors
