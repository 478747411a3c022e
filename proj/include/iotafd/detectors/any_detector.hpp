#pragma once

#include <concepts>
#include <variant>

#include "iotafd/detectors/adaptive.hpp"
#include "iotafd/detectors/iota.hpp"
#include "iotafd/detectors/phi.hpp"

namespace iotafd::detectors {

// The contract every detector satisfies, so the QoS benchmark and the engines
// can treat them alike.
template <typename D>
concept HeartbeatDetector = requires(D d, const D cd, const HeartbeatSample& hb, TimestampMs t, double u) {
  d.record_heartbeat(hb);
  { cd.suspicion(t) } -> std::convertible_to<double>;
  { cd.is_suspected(t, u) } -> std::same_as<bool>;
  { cd.is_suspected(t) } -> std::same_as<bool>;
  { cd.has_heartbeat() } -> std::same_as<bool>;
  { cd.last_timestamp() } -> std::same_as<TimestampMs>;
  { cd.config() } -> std::same_as<const DetectorConfig&>;
};

static_assert(HeartbeatDetector<IotaDetector>);
static_assert(HeartbeatDetector<PhiDetector>);
static_assert(HeartbeatDetector<AdaptiveDetector>);

class AnyDetector {
 public:
  using Variant = std::variant<IotaDetector, PhiDetector, AdaptiveDetector>;

  AnyDetector(DetectorKind kind, const DetectorConfig& config);
  explicit AnyDetector(Variant detector) : detector_(std::move(detector)) {}

  DetectorKind kind() const noexcept;

  void record_heartbeat(const HeartbeatSample& hb) {
    std::visit([&](auto& d) { d.record_heartbeat(hb); }, detector_);
  }
  double suspicion(TimestampMs now) const {
    return std::visit([&](const auto& d) { return d.suspicion(now); }, detector_);
  }
  bool is_suspected(TimestampMs now, double threshold) const {
    return std::visit([&](const auto& d) { return d.is_suspected(now, threshold); }, detector_);
  }
  bool is_suspected(TimestampMs now) const {
    return std::visit([&](const auto& d) { return d.is_suspected(now); }, detector_);
  }
  bool has_heartbeat() const noexcept {
    return std::visit([](const auto& d) { return d.has_heartbeat(); }, detector_);
  }
  TimestampMs last_timestamp() const noexcept {
    return std::visit([](const auto& d) { return d.last_timestamp(); }, detector_);
  }
  const DetectorConfig& config() const noexcept {
    return std::visit([](const auto& d) -> const DetectorConfig& { return d.config(); }, detector_);
  }

  const Variant& variant() const noexcept { return detector_; }

 private:
  Variant detector_;
};

}  // namespace iotafd::detectors
