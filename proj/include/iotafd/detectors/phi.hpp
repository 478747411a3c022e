#pragma once

#include "iotafd/detectors/config.hpp"
#include "iotafd/detectors/estimator.hpp"
#include "iotafd/detectors/heartbeat.hpp"

namespace iotafd::detectors {

struct PhiDetectorState {
  DetectorConfig config;
  ArrivalClock clock;
  RecursiveEstimatorState estimator;

  friend bool operator==(const PhiDetectorState&, const PhiDetectorState&) = default;
};

// Phi-Accrual: the same recursive estimators as iota-FD fed into the normal
// CDF. No refresh period: fresh estimates are used as soon as the variance is
// defined (two intervals after a reset); omega_min is ignored.
class PhiDetector {
 public:
  explicit PhiDetector(DetectorConfig config = {});
  explicit PhiDetector(PhiDetectorState state);

  void record_heartbeat(const HeartbeatSample& hb);

  EstimatorSnapshot estimator_snapshot() const;

  double suspicion(TimestampMs now) const;
  bool is_suspected(TimestampMs now, double threshold) const;
  bool is_suspected(TimestampMs now) const { return is_suspected(now, state_.config.threshold); }

  bool has_heartbeat() const noexcept { return state_.clock.started; }
  TimestampMs last_timestamp() const noexcept { return state_.clock.last_timestamp; }
  const DetectorConfig& config() const noexcept { return state_.config; }
  const PhiDetectorState& state() const noexcept { return state_; }

 private:
  PhiDetectorState state_;
};

}  // namespace iotafd::detectors
