#include "iotafd/detectors/phi.hpp"

#include "iotafd/detectors/suspicion.hpp"
#include "iotafd/error.hpp"

namespace iotafd::detectors {

PhiDetector::PhiDetector(DetectorConfig config) {
  config.validate();
  state_.config = config;
}

PhiDetector::PhiDetector(PhiDetectorState state) : state_(std::move(state)) { state_.config.validate(); }

void PhiDetector::record_heartbeat(const HeartbeatSample& hb) {
  const DurationMs interval = state_.clock.advance(hb);
  if (interval > 0) add_interval(state_.estimator, interval, state_.config.omega_max);
}

EstimatorSnapshot PhiDetector::estimator_snapshot() const {
  return snapshot(state_.estimator, 2, state_.config.bootstrap_period, state_.config.bootstrap_variance);
}

double PhiDetector::suspicion(TimestampMs now) const {
  if (!state_.clock.started) throw Error(Errc::unavailable, "phi detector has not received a heartbeat");
  const EstimatorSnapshot est = estimator_snapshot();
  return normal_suspicion(est.mean, est.variance, static_cast<double>(now - state_.clock.last_timestamp));
}

bool PhiDetector::is_suspected(TimestampMs now, double threshold) const { return reaches_threshold(suspicion(now), threshold); }

}  // namespace iotafd::detectors
