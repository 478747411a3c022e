#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "iotafd/detectors/config.hpp"
#include "iotafd/detectors/heartbeat.hpp"

namespace iotafd::detectors {

// Stores the last omega_max inter-arrival times verbatim, so its size grows
// with window occupancy.
struct AdaptiveDetectorState {
  DetectorConfig config;
  ArrivalClock clock;
  std::vector<DurationMs> window;  // ring buffer once full
  std::size_t head = 0;            // oldest entry when the ring is full

  friend bool operator==(const AdaptiveDetectorState&, const AdaptiveDetectorState&) = default;
};

// Suspicion is the empirical CDF of the stored inter-arrival times at the
// current elapsed time: a probability in [0, 1].
class AdaptiveDetector {
 public:
  explicit AdaptiveDetector(DetectorConfig config = {});
  explicit AdaptiveDetector(AdaptiveDetectorState state);

  void record_heartbeat(const HeartbeatSample& hb);

  // Throws Errc::unavailable while the window is empty.
  double suspicion(TimestampMs now) const;
  bool is_suspected(TimestampMs now, double threshold) const;
  bool is_suspected(TimestampMs now) const { return is_suspected(now, state_.config.threshold); }

  // Stored intervals in storage order (not chronological once wrapped).
  std::span<const DurationMs> window() const noexcept { return state_.window; }
  // Stored intervals oldest first.
  std::vector<DurationMs> chronological_window() const;

  bool has_heartbeat() const noexcept { return state_.clock.started; }
  TimestampMs last_timestamp() const noexcept { return state_.clock.last_timestamp; }
  const DetectorConfig& config() const noexcept { return state_.config; }
  const AdaptiveDetectorState& state() const noexcept { return state_; }

 private:
  AdaptiveDetectorState state_;
};

}  // namespace iotafd::detectors
