#pragma once

#include "iotafd/detectors/config.hpp"
#include "iotafd/detectors/estimator.hpp"
#include "iotafd/detectors/heartbeat.hpp"
#include "iotafd/detectors/packet_loss.hpp"
#include "iotafd/detectors/resource.hpp"

namespace iotafd::detectors {

// Everything iota-FD keeps per monitored node. The size is fixed: it does not
// depend on omega_max or on how many heartbeats were seen.
struct IotaDetectorState {
  DetectorConfig config;
  ArrivalClock clock;
  RecursiveEstimatorState estimator;
  PacketLossState loss_state;
  ResourceRing resource_ring;

  friend bool operator==(const IotaDetectorState&, const IotaDetectorState&) = default;
};

// Accrual detector with a Chebyshev suspicion function over recursively
// estimated inter-arrival statistics, plus packet-loss and resource
// forecasting.
class IotaDetector {
 public:
  explicit IotaDetector(DetectorConfig config = {});
  explicit IotaDetector(IotaDetectorState state);

  void record_heartbeat(const HeartbeatSample& hb);

  EstimatorSnapshot estimator_snapshot() const;

  // Throws Errc::unavailable before the first heartbeat.
  double suspicion(TimestampMs now) const;
  bool is_suspected(TimestampMs now, double threshold) const;
  bool is_suspected(TimestampMs now) const { return is_suspected(now, state_.config.threshold); }

  double packet_loss_estimate() const noexcept { return state_.loss_state.p_prev; }

  // Throws Errc::unavailable with fewer than four heartbeats.
  ResourceForecast resource_forecast(TimestampMs at) const { return state_.resource_ring.forecast(at); }

  bool has_heartbeat() const noexcept { return state_.clock.started; }
  TimestampMs last_timestamp() const noexcept { return state_.clock.last_timestamp; }
  const DetectorConfig& config() const noexcept { return state_.config; }
  const IotaDetectorState& state() const noexcept { return state_; }

 private:
  IotaDetectorState state_;
};

}  // namespace iotafd::detectors
