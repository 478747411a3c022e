#include "iotafd/detectors/adaptive.hpp"

#include <algorithm>

#include "iotafd/detectors/suspicion.hpp"
#include "iotafd/error.hpp"

namespace iotafd::detectors {

AdaptiveDetector::AdaptiveDetector(DetectorConfig config) {
  config.validate();
  state_.config = config;
}

AdaptiveDetector::AdaptiveDetector(AdaptiveDetectorState state) : state_(std::move(state)) {
  state_.config.validate();
  if (state_.window.size() > state_.config.omega_max) {
    throw Error(Errc::invalid_argument, "adaptive window holds more than omega_max intervals");
  }
  if (state_.head != 0 && state_.head >= state_.window.size()) {
    throw Error(Errc::invalid_argument, "adaptive window head out of range");
  }
}

void AdaptiveDetector::record_heartbeat(const HeartbeatSample& hb) {
  const DurationMs interval = state_.clock.advance(hb);
  if (interval <= 0) return;
  if (state_.window.size() < state_.config.omega_max) {
    state_.window.push_back(interval);
    return;
  }
  state_.window[state_.head] = interval;
  state_.head = (state_.head + 1) % state_.window.size();
}

double AdaptiveDetector::suspicion(TimestampMs now) const {
  if (state_.window.empty()) throw Error(Errc::unavailable, "adaptive detector window is empty");
  return empirical_suspicion(state_.window, now - state_.clock.last_timestamp);
}

bool AdaptiveDetector::is_suspected(TimestampMs now, double threshold) const {
  return reaches_threshold(suspicion(now), threshold);
}

std::vector<DurationMs> AdaptiveDetector::chronological_window() const {
  std::vector<DurationMs> out(state_.window);
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(state_.head), out.end());
  return out;
}

}  // namespace iotafd::detectors
