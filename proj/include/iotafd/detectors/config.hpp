#pragma once

#include <cstdint>
#include <string_view>

namespace iotafd::detectors {

// Variance floor applied before any suspicion evaluation, in ms^2.
inline constexpr double kVarianceFloor = 1e-9;

enum class DetectorKind { iota, phi, adaptive };

std::string_view to_string(DetectorKind kind) noexcept;
DetectorKind parse_detector_kind(std::string_view name);

// Per-link failure-detection parameters. Times are milliseconds.
struct DetectorConfig {
  double threshold = 3.0;              // U, the per-service suspicion threshold
  std::uint64_t omega_max = 500;       // learning window
  std::uint64_t omega_min = 50;        // intervals before fresh estimates replace the frozen ones
  double alpha = 0.5;                  // packet-loss learning/forgetting speed
  std::uint64_t loss_window = 100;     // loss-free heartbeats before a decay update
  double bootstrap_period = 1000.0;    // mean used before anything was learned
  double bootstrap_variance = 9.0e6;   // variance used before anything was learned

  void validate() const;

  friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

}  // namespace iotafd::detectors
