#include "iotafd/detectors/any_detector.hpp"

namespace iotafd::detectors {

namespace {

AnyDetector::Variant make(DetectorKind kind, const DetectorConfig& config) {
  switch (kind) {
    case DetectorKind::iota: return IotaDetector(config);
    case DetectorKind::phi: return PhiDetector(config);
    case DetectorKind::adaptive: return AdaptiveDetector(config);
  }
  return IotaDetector(config);
}

}  // namespace

AnyDetector::AnyDetector(DetectorKind kind, const DetectorConfig& config) : detector_(make(kind, config)) {}

DetectorKind AnyDetector::kind() const noexcept {
  switch (detector_.index()) {
    case 1: return DetectorKind::phi;
    case 2: return DetectorKind::adaptive;
    default: return DetectorKind::iota;
  }
}

}  // namespace iotafd::detectors
