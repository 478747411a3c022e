#include "iotafd/qos/crossing.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "iotafd/error.hpp"

namespace iotafd::qos {

using detectors::AdaptiveDetector;
using detectors::DetectorKind;
using detectors::IotaDetector;
using detectors::PhiDetector;

bool verdict(const detectors::AnyDetector& detector, TimestampMs now, double threshold) {
  if (!detector.has_heartbeat()) return false;
  if (const auto* a = std::get_if<AdaptiveDetector>(&detector.variant()); a != nullptr && a->window().empty()) {
    return false;
  }
  return detector.is_suspected(now, threshold);
}

// Acklam's rational approximation of the normal quantile (relative error
// about 1e-9), evaluated on the lower tail for accuracy at small q.
double upper_tail_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(Errc::invalid_argument, "quantile probability must be in (0, 1)");
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  // Lower-tail quantile x(p) with P(Z <= x) = p; answer is -x(q).
  auto lower = [&](double p) {
    if (p < kLow) {
      const double s = std::sqrt(-2.0 * std::log(p));
      return (((((c[0] * s + c[1]) * s + c[2]) * s + c[3]) * s + c[4]) * s + c[5]) /
             ((((d[0] * s + d[1]) * s + d[2]) * s + d[3]) * s + 1.0);
    }
    if (p > 1.0 - kLow) {
      const double s = std::sqrt(-2.0 * std::log1p(-p));
      return -(((((c[0] * s + c[1]) * s + c[2]) * s + c[3]) * s + c[4]) * s + c[5]) /
             ((((d[0] * s + d[1]) * s + d[2]) * s + d[3]) * s + 1.0);
    }
    const double s = p - 0.5;
    const double r = s * s;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * s /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  };
  return -lower(q);
}

namespace {

DurationMs ceil_to_ms(double x) {
  if (std::isnan(x)) return 0;
  if (x >= 9.0e18) return kNever;
  if (x <= 0.0) return 0;
  return static_cast<DurationMs>(std::ceil(x));
}

}  // namespace

CrossingSolver::CrossingSolver(const detectors::AnyDetector& detector) : detector_(detector) {
  if (!detector.has_heartbeat()) return;
  last_ = detector.last_timestamp();
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, AdaptiveDetector>) {
          sorted_window_.assign(d.window().begin(), d.window().end());
          std::sort(sorted_window_.begin(), sorted_window_.end());
          available_ = !sorted_window_.empty();
        } else {
          const auto snap = d.estimator_snapshot();
          mean_ = snap.mean;
          variance_ = std::max(snap.variance, detectors::kVarianceFloor);
          available_ = true;
        }
      },
      detector.variant());
}

DurationMs CrossingSolver::guess(double threshold) const {
  if (!(threshold > 0.0)) return 0;
  switch (detector_.kind()) {
    case DetectorKind::iota:
      // s >= U  <=>  d^2 >= var * (10^U - 1)
      return ceil_to_ms(mean_ + std::sqrt(variance_ * std::expm1(threshold * std::log(10.0))));
    case DetectorKind::phi: {
      const double q = std::pow(10.0, -threshold);
      if (!(q > 0.0)) return kNever;
      return ceil_to_ms(mean_ + std::sqrt(variance_) * upper_tail_quantile(q));
    }
    case DetectorKind::adaptive: {
      const auto len = sorted_window_.size();
      const double n = static_cast<double>(len);
      // Smallest k with k / len >= U as the detector computes it.
      auto k = static_cast<std::size_t>(std::clamp(std::ceil(threshold * n), 0.0, n));
      while (k > 0 && static_cast<double>(k - 1) / n >= threshold) --k;
      while (k <= len && !(static_cast<double>(k) / n >= threshold)) ++k;
      if (k > len) return kNever;
      return k == 0 ? 0 : sorted_window_[k - 1];
    }
  }
  return 0;
}

DurationMs CrossingSolver::solve(double threshold, DurationMs limit) const {
  if (!available_ || limit <= 0) return kNever;
  const DurationMs g = guess(threshold);
  auto pred = [&](DurationMs e) { return detector_.is_suspected(last_ + e, threshold); };
  return search_first_true(pred, g == kNever ? limit - 1 : g, 0, limit);
}

}  // namespace iotafd::qos
