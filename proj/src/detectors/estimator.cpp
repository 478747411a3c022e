#include "iotafd/detectors/estimator.hpp"

#include <algorithm>

#include "iotafd/detectors/heartbeat.hpp"
#include "iotafd/error.hpp"

namespace iotafd::detectors {

void ArrivalClock::check(const HeartbeatSample& hb) const {
  if (!started) return;
  if (hb.timestamp <= last_timestamp) {
    throw Error(Errc::ordering, "heartbeat timestamp " + std::to_string(hb.timestamp) +
                                    " does not follow " + std::to_string(last_timestamp));
  }
  if (hb.seq <= last_seq) {
    throw Error(Errc::ordering,
                "heartbeat seq " + std::to_string(hb.seq) + " does not follow " + std::to_string(last_seq));
  }
}

DurationMs ArrivalClock::advance(const HeartbeatSample& hb) {
  check(hb);
  const DurationMs interval = started ? hb.timestamp - last_timestamp : -1;
  started = true;
  last_timestamp = hb.timestamp;
  last_seq = hb.seq;
  return interval;
}

void add_interval(RecursiveEstimatorState& state, DurationMs interval, std::uint64_t omega_max) {
  if (state.n >= omega_max) {
    state.frozen_mu = fresh_mean(state);
    state.frozen_var = fresh_variance(state);
    state.has_frozen = true;
    state.rho_sum = 0;
    state.kappa_sum = 0;
    state.n = 0;
  }
  const auto d = static_cast<Accumulator>(interval);
  state.rho_sum += d;
  state.kappa_sum += d * d;
  ++state.n;
}

double fresh_mean(const RecursiveEstimatorState& state) {
  return static_cast<double>(state.rho_sum) / static_cast<double>(state.n);
}

double fresh_variance(const RecursiveEstimatorState& state) {
  // (kappa/n - (rho/n)^2) * n/(n-1) == (n*kappa - rho^2) / (n*(n-1)); the
  // numerator is exact in 128 bits and non-negative by Cauchy-Schwarz.
  const Accumulator n = state.n;
  const Accumulator numerator = n * state.kappa_sum - state.rho_sum * state.rho_sum;
  return static_cast<double>(numerator) / (static_cast<double>(state.n) * static_cast<double>(state.n - 1));
}

EstimatorSnapshot snapshot(const RecursiveEstimatorState& state, std::uint64_t fresh_min,
                           double bootstrap_mean, double bootstrap_variance) {
  if (state.n >= std::max<std::uint64_t>(fresh_min, 2)) {
    return {fresh_mean(state), fresh_variance(state), state.n, EstimateSource::fresh};
  }
  if (state.has_frozen) return {state.frozen_mu, state.frozen_var, state.n, EstimateSource::frozen};
  return {bootstrap_mean, bootstrap_variance, state.n, EstimateSource::bootstrap};
}

}  // namespace iotafd::detectors
