#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "iotafd/detectors/any_detector.hpp"

namespace iotafd::qos {

inline constexpr DurationMs kNever = std::numeric_limits<DurationMs>::max();

// The detector's verdict at `now`, treating "no answer yet" (no heartbeat, or
// an empty adaptive window) as not suspected.
bool verdict(const detectors::AnyDetector& detector, TimestampMs now, double threshold);

// Smallest e in [lo, hi) with pred(e), for pred monotone (false then true),
// starting from a guess. Returns kNever if pred(hi - 1) is false.
template <typename Pred>
DurationMs search_first_true(Pred&& pred, DurationMs guess, DurationMs lo, DurationMs hi);

// Solves, for the detector's state between two heartbeats, the elapsed time
// at which suspicion first reaches a threshold. The closed forms only seed the
// search; every answer is confirmed against is_suspected.
class CrossingSolver {
 public:
  explicit CrossingSolver(const detectors::AnyDetector& detector);

  // Smallest elapsed e in [0, limit) with verdict(last + e, threshold), or
  // kNever.
  DurationMs solve(double threshold, DurationMs limit) const;

 private:
  DurationMs guess(double threshold) const;

  const detectors::AnyDetector& detector_;
  bool available_ = false;
  TimestampMs last_ = 0;
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::vector<DurationMs> sorted_window_;
};

// z with P(Z > z) = q for a standard normal Z, q in (0, 1).
double upper_tail_quantile(double q);

template <typename Pred>
DurationMs search_first_true(Pred&& pred, DurationMs guess, DurationMs lo, DurationMs hi) {
  if (lo >= hi) return kNever;
  guess = std::clamp(guess, lo, hi - 1);
  // Invariant once bracketed: pred(bad) false (or bad < lo), pred(good) true.
  DurationMs bad = lo - 1;
  DurationMs good = hi;
  if (pred(guess)) {
    good = guess;
    DurationMs step = 1;
    while (good - step >= lo) {
      if (!pred(good - step)) {
        bad = good - step;
        break;
      }
      good -= step;
      step *= 2;
    }
  } else {
    bad = guess;
    DurationMs step = 1;
    for (;;) {
      if (bad + step >= hi) {
        if (!pred(hi - 1)) return kNever;
        good = hi - 1;
        break;
      }
      if (pred(bad + step)) {
        good = bad + step;
        break;
      }
      bad += step;
      step *= 2;
    }
  }
  while (good - bad > 1) {
    const DurationMs mid = bad + (good - bad) / 2;
    if (pred(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace iotafd::qos
