#include "iotafd/qos/metrics.hpp"

#include <algorithm>

#include "iotafd/error.hpp"
#include "iotafd/qos/crossing.hpp"
#include "iotafd/simnet/trace.hpp"

namespace iotafd::qos {

HeartbeatLog heartbeat_log_from_events(const simnet::EventLog& log, const simnet::NodeId& monitor,
                                       std::optional<TimestampMs> crash, TimestampMs end) {
  HeartbeatLog out;
  out.crash = crash;
  out.end = end;
  for (const simnet::LogRecord& r : log) {
    if (r.kind != simnet::EventKind::heartbeat_deliver || r.target != monitor) continue;
    const TimestampMs* previous = out.arrivals.empty() ? nullptr : &out.arrivals.back().timestamp;
    out.arrivals.push_back({simnet::arrival_millis(r.time, previous), r.detail.at("seq").get<std::uint64_t>(),
                            r.detail.value("resource", 1.0)});
  }
  return out;
}

double ThresholdMetrics::mistake_rate() const {
  if (alive_ms <= 0) return 0.0;
  return static_cast<double>(mistakes) / to_units(alive_ms);
}

double ThresholdMetrics::query_accuracy() const {
  if (samples == 0) return 1.0;
  return static_cast<double>(correct_samples) / static_cast<double>(samples);
}

std::optional<double> ThresholdMetrics::detection_time() const {
  if (!detection_ms) return std::nullopt;
  return to_units(*detection_ms);
}

namespace {

// Number of sample instants k * period in [a, b), for 0 <= a.
std::uint64_t count_grid(TimestampMs a, TimestampMs b, DurationMs period) {
  if (b <= a) return 0;
  auto ceil_div = [period](TimestampMs x) { return (x + period - 1) / period; };
  return static_cast<std::uint64_t>(ceil_div(b) - ceil_div(a));
}

struct Progress {
  bool suspected_at_gap_end = false;
  TimestampMs run_start = 0;
};

}  // namespace

std::vector<ThresholdMetrics> evaluate_thresholds(const HeartbeatLog& log, detectors::DetectorKind kind,
                                                  const detectors::DetectorConfig& config,
                                                  std::span<const double> thresholds, DurationMs sampling_period_ms) {
  if (sampling_period_ms < 1) throw Error(Errc::invalid_argument, "sampling period must be >= 1 ms");
  if (log.end < 0) throw Error(Errc::invalid_argument, "run end must be >= 0");
  if (!log.arrivals.empty() && log.arrivals.front().timestamp < 0) {
    throw Error(Errc::invalid_argument, "arrivals must not precede instant 0");
  }
  for (double u : thresholds) {
    if (!(u >= 0.0)) throw Error(Errc::invalid_argument, "thresholds must be >= 0");
  }

  const TimestampMs end = log.end;
  const TimestampMs crash = std::clamp(log.crash.value_or(end), TimestampMs{0}, end);
  const std::uint64_t total_samples = count_grid(0, end, sampling_period_ms);

  std::vector<ThresholdMetrics> out(thresholds.size());
  std::vector<Progress> progress(thresholds.size());
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    out[j].threshold = thresholds[j];
    out[j].alive_ms = crash;
    out[j].samples = total_samples;
  }

  // Arrivals at or after the horizon are never observed.
  const auto observed = static_cast<std::size_t>(
      std::lower_bound(log.arrivals.begin(), log.arrivals.end(), end,
                       [](const detectors::HeartbeatSample& hb, TimestampMs t) { return hb.timestamp < t; }) -
      log.arrivals.begin());

  // Nothing is suspected before the first heartbeat.
  const TimestampMs first = observed == 0 ? end : log.arrivals.front().timestamp;
  for (auto& m : out) m.correct_samples += count_grid(0, std::min(first, crash), sampling_period_ms);

  detectors::AnyDetector detector(kind, config);
  for (std::size_t i = 0; i < observed; ++i) {
    detector.record_heartbeat(log.arrivals[i]);
    const TimestampMs start = log.arrivals[i].timestamp;
    const TimestampMs gap_end = i + 1 < observed ? log.arrivals[i + 1].timestamp : end;
    const CrossingSolver solver(detector);
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      ThresholdMetrics& m = out[j];
      Progress& p = progress[j];
      const DurationMs e = solver.solve(thresholds[j], gap_end - start);
      const TimestampMs onset = e == kNever ? gap_end : start + e;
      if (e != kNever) {
        const bool continues = e == 0 && p.suspected_at_gap_end;
        if (!continues) {
          p.run_start = onset;
          if (onset < crash) ++m.mistakes;
        }
      }
      p.suspected_at_gap_end = e != kNever;
      m.correct_samples += count_grid(start, std::min(onset, crash), sampling_period_ms);
      m.correct_samples += count_grid(std::max(onset, crash), gap_end, sampling_period_ms);
    }
  }

  if (log.crash && *log.crash < end) {
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      if (progress[j].suspected_at_gap_end) {
        out[j].detection_ms = std::max(progress[j].run_start, crash) - crash;
      } else {
        out[j].censored = true;
      }
    }
  }
  return out;
}

namespace {

ThresholdMetrics evaluate_one(const HeartbeatLog& log, detectors::DetectorKind kind,
                              const detectors::DetectorConfig& config, double threshold, DurationMs period) {
  const double u[] = {threshold};
  return evaluate_thresholds(log, kind, config, u, period).front();
}

}  // namespace

std::optional<double> compute_detection_time(const HeartbeatLog& log, detectors::DetectorKind kind,
                                             const detectors::DetectorConfig& config, double threshold) {
  if (!log.crash) throw Error(Errc::invalid_argument, "detection time needs a crash in the log");
  return evaluate_one(log, kind, config, threshold, 1).detection_time();
}

double compute_mistake_rate(const HeartbeatLog& log, detectors::DetectorKind kind,
                            const detectors::DetectorConfig& config, double threshold) {
  const TimestampMs alive = log.crash.value_or(log.end);
  if (alive <= 0) throw Error(Errc::invalid_argument, "alive interval must have positive length");
  return evaluate_one(log, kind, config, threshold, 1).mistake_rate();
}

double compute_query_accuracy(const HeartbeatLog& log, detectors::DetectorKind kind,
                              const detectors::DetectorConfig& config, double threshold,
                              DurationMs sampling_period_ms) {
  return evaluate_one(log, kind, config, threshold, sampling_period_ms).query_accuracy();
}

}  // namespace iotafd::qos
