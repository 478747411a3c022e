#pragma once

// Test-only reference: two-pass mean and sample variance over the raw list of
// intervals, in long double. Shares no code with the recursive estimator.

#include <cstdint>
#include <vector>

namespace oracle {

struct BatchStats {
  long double mean = 0;
  long double variance = 0;
};

inline BatchStats batch_stats(const std::vector<std::int64_t>& xs) {
  BatchStats s;
  if (xs.empty()) return s;
  long double sum = 0;
  for (auto x : xs) sum += static_cast<long double>(x);
  s.mean = sum / static_cast<long double>(xs.size());
  if (xs.size() < 2) return s;
  long double ss = 0;
  for (auto x : xs) {
    const long double d = static_cast<long double>(x) - s.mean;
    ss += d * d;
  }
  s.variance = ss / static_cast<long double>(xs.size() - 1);
  return s;
}

// Brute-force empirical CDF: walk the window and count.
inline double empirical_cdf(const std::vector<std::int64_t>& window, std::int64_t x) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (!(window[i] > x)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(window.size());
}

}  // namespace oracle
