#pragma once

#include <cstdint>

#include "iotafd/time.hpp"

namespace iotafd::detectors {

__extension__ typedef unsigned __int128 Accumulator;

enum class EstimateSource { fresh, frozen, bootstrap };

struct EstimatorSnapshot {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t n = 0;
  EstimateSource source = EstimateSource::bootstrap;
};

// Recursive mean/variance over inter-arrival times: a running sum (rho) and a
// running sum of squares (kappa). Both reset when the learning window fills;
// the last full-window estimate is frozen and served until enough fresh
// intervals have accumulated.
struct RecursiveEstimatorState {
  Accumulator rho_sum = 0;
  Accumulator kappa_sum = 0;
  std::uint64_t n = 0;
  bool has_frozen = false;
  double frozen_mu = 0.0;
  double frozen_var = 0.0;

  friend bool operator==(const RecursiveEstimatorState&, const RecursiveEstimatorState&) = default;
};

// Adds one interval. If the window already holds omega_max intervals, the
// current estimate is frozen and the sums restart with this interval.
void add_interval(RecursiveEstimatorState& state, DurationMs interval, std::uint64_t omega_max);

// Fresh estimate from the sums when n >= max(fresh_min, 2); else the frozen
// snapshot; else the bootstrap values.
EstimatorSnapshot snapshot(const RecursiveEstimatorState& state, std::uint64_t fresh_min,
                           double bootstrap_mean, double bootstrap_variance);

// Sample mean and variance straight from the sums; requires n >= 2.
double fresh_mean(const RecursiveEstimatorState& state);
double fresh_variance(const RecursiveEstimatorState& state);

}  // namespace iotafd::detectors
