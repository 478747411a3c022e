#include "iotafd/simnet/trace.hpp"

#include <algorithm>
#include <cmath>

#include "iotafd/error.hpp"
#include "iotafd/random.hpp"

namespace iotafd::simnet {

void TraceSpec::validate() const {
  auto fail = [](const char* what) { throw Error(Errc::invalid_argument, std::string("trace spec: ") + what); };
  if (!std::isfinite(mean)) fail("mean must be finite");
  if (!(variance >= 0.0) || !std::isfinite(variance)) fail("variance must be >= 0");
  if (!(duration > 0.0) || !std::isfinite(duration)) fail("duration must be > 0");
  if (!(clamp_floor >= 0.0)) fail("clamp_floor must be >= 0");
  if (clamp_floor == 0.0 && mean <= 0.0) fail("clamp_floor must be > 0 when mean <= 0");
}

std::vector<TracePoint> generate_heartbeat_trace(const TraceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const double stddev = std::sqrt(spec.variance);
  std::vector<TracePoint> trace;
  trace.reserve(static_cast<std::size_t>(spec.duration / std::max(spec.mean, spec.clamp_floor)) + 16);
  double t = 0.0;
  std::uint64_t seq = 1;
  trace.push_back({t, seq});
  for (;;) {
    t += std::max(rng.normal(spec.mean, stddev), spec.clamp_floor);
    if (t > spec.duration) break;
    trace.push_back({t, ++seq});
  }
  return trace;
}

TimestampMs arrival_millis(double time, const TimestampMs* previous) {
  const TimestampMs ms = to_millis(time);
  if (previous != nullptr && ms <= *previous) return *previous + 1;
  return ms;
}

std::vector<detectors::HeartbeatSample> to_heartbeat_samples(const std::vector<TracePoint>& trace) {
  std::vector<detectors::HeartbeatSample> out;
  out.reserve(trace.size());
  for (const TracePoint& p : trace) {
    const TimestampMs ms = arrival_millis(p.time, out.empty() ? nullptr : &out.back().timestamp);
    out.push_back({ms, p.seq, 1.0});
  }
  return out;
}

}  // namespace iotafd::simnet
