#include "iotafd/detectors/config.hpp"

#include <cmath>
#include <string>

#include "iotafd/error.hpp"

namespace iotafd::detectors {

std::string_view to_string(DetectorKind kind) noexcept {
  switch (kind) {
    case DetectorKind::iota: return "iota";
    case DetectorKind::phi: return "phi";
    case DetectorKind::adaptive: return "adaptive";
  }
  return "unknown";
}

DetectorKind parse_detector_kind(std::string_view name) {
  if (name == "iota") return DetectorKind::iota;
  if (name == "phi") return DetectorKind::phi;
  if (name == "adaptive") return DetectorKind::adaptive;
  throw Error(Errc::invalid_argument, "unknown detector kind '" + std::string(name) + "'");
}

void DetectorConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::invalid_argument, "detector config: " + what); };
  if (std::isnan(threshold) || threshold < 0.0) fail("threshold must be >= 0");
  if (omega_min < 2) fail("omega_min must be >= 2");
  if (omega_max < omega_min) fail("omega_max must be >= omega_min");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must be in [0, 1]");
  if (loss_window < 1) fail("loss_window must be >= 1");
  if (!(bootstrap_period > 0.0)) fail("bootstrap_period must be > 0");
  if (!(bootstrap_variance >= 0.0)) fail("bootstrap_variance must be >= 0");
}

}  // namespace iotafd::detectors
