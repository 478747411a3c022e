#include "iotafd/detectors/iota.hpp"

#include "iotafd/detectors/suspicion.hpp"
#include "iotafd/error.hpp"

namespace iotafd::detectors {

namespace {

void check_resource_level(double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw Error(Errc::invalid_argument, "resource_level must be in [0, 1], got " + std::to_string(level));
  }
}

}  // namespace

IotaDetector::IotaDetector(DetectorConfig config) {
  config.validate();
  state_.config = config;
  state_.loss_state.alpha = config.alpha;
}

IotaDetector::IotaDetector(IotaDetectorState state) : state_(std::move(state)) { state_.config.validate(); }

void IotaDetector::record_heartbeat(const HeartbeatSample& hb) {
  state_.clock.check(hb);
  check_resource_level(hb.resource_level);
  const DurationMs interval = state_.clock.advance(hb);
  if (interval > 0) add_interval(state_.estimator, interval, state_.config.omega_max);
  observe_sequence(state_.loss_state, hb.seq, state_.config.loss_window);
  state_.resource_ring.push(hb);
}

EstimatorSnapshot IotaDetector::estimator_snapshot() const {
  return snapshot(state_.estimator, state_.config.omega_min, state_.config.bootstrap_period,
                  state_.config.bootstrap_variance);
}

double IotaDetector::suspicion(TimestampMs now) const {
  if (!state_.clock.started) throw Error(Errc::unavailable, "iota detector has not received a heartbeat");
  const EstimatorSnapshot est = estimator_snapshot();
  return chebyshev_suspicion(est.mean, est.variance, static_cast<double>(now - state_.clock.last_timestamp));
}

bool IotaDetector::is_suspected(TimestampMs now, double threshold) const { return reaches_threshold(suspicion(now), threshold); }

}  // namespace iotafd::detectors
