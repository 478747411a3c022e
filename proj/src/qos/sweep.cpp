#include "iotafd/qos/sweep.hpp"

#include <charconv>
#include <cmath>

#include "iotafd/config_reader.hpp"
#include "iotafd/detectors/serialize.hpp"
#include "iotafd/random.hpp"

namespace iotafd::qos {

using detectors::DetectorKind;
using nlohmann::json;

namespace {

std::vector<double> read_thresholds(const ConfigNode& parent) {
  const std::string key = "thresholds";
  const json& raw = parent.json().contains(key) ? parent.json().at(key) : json();
  std::vector<double> out;
  if (raw.is_array()) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const json& v = raw[i];
      if (v.is_string() && v.get<std::string>() == "inf") {
        out.push_back(std::numeric_limits<double>::infinity());
      } else if (v.is_number()) {
        out.push_back(v.get<double>());
      } else {
        throw ConfigError(parent.field(key) + "[" + std::to_string(i) + "]", "expected a number or \"inf\"");
      }
    }
    return out;
  }
  if (!raw.is_object()) parent.fail(key, "expected an array or a {from, to, count, scale} range");
  const ConfigNode range(raw, parent.field(key));
  const double from = range.number("from");
  const double to = range.number("to");
  const std::uint64_t count = range.unsigned_integer("count");
  const std::string scale = range.string("scale", "linear");
  if (count < 1) range.fail("count", "must be >= 1");
  if (!(to > from) && count > 1) range.fail("to", "must be greater than from");
  if (scale != "linear" && scale != "log") range.fail("scale", "must be \"linear\" or \"log\"");
  if (scale == "log" && !(from > 0.0)) range.fail("from", "must be > 0 for a log scale");
  for (std::uint64_t i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(scale == "linear" ? from + f * (to - from) : from * std::pow(to / from, f));
  }
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  auto check = [](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(field, e.what());
    }
  };
  check("trace", [&] { trace.validate(); });
  if (loss) check("loss", [&] { loss->validate(); });
  const double crash = effective_crash_time();
  if (!(crash > 0.0) || !std::isfinite(crash)) throw ConfigError("crash_time", "must be > 0");
  if (!(post_crash_horizon > 0.0) || !std::isfinite(post_crash_horizon)) {
    throw ConfigError("post_crash_horizon", "must be > 0");
  }
  if (!(query_period > 0.0) || to_millis(query_period) < 1) throw ConfigError("query_period", "must be >= 1 ms");
  if (detectors.empty()) throw ConfigError("detectors", "at least one detector is required");
  for (std::size_t i = 0; i < detectors.size(); ++i) {
    const std::string path = "detectors[" + std::to_string(i) + "]";
    check(path + ".config", [&] { detectors[i].config.validate(); });
    const auto& u = detectors[i].thresholds;
    if (u.empty()) throw ConfigError(path + ".thresholds", "at least one threshold is required");
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!(u[k] >= 0.0)) throw ConfigError(path + ".thresholds", "thresholds must be >= 0");
      if (k > 0 && !(u[k] > u[k - 1])) throw ConfigError(path + ".thresholds", "thresholds must strictly increase");
    }
  }
}

SweepSpec parse_sweep_spec(const json& document) {
  const ConfigNode root(document, "");
  SweepSpec spec;
  spec.seed = root.unsigned_integer("seed", spec.seed);
  spec.trials = root.unsigned_integer("trials", spec.trials);
  if (auto t = root.optional_object("trace")) {
    spec.trace.mean = t->number("mean", spec.trace.mean);
    spec.trace.variance = t->number("variance", spec.trace.variance);
    spec.trace.duration = t->number("duration", spec.trace.duration);
    spec.trace.clamp_floor = t->number("clamp_floor", spec.trace.clamp_floor);
    if (!(spec.trace.variance >= 0.0)) t->fail("variance", "must be >= 0");
    if (!(spec.trace.duration > 0.0)) t->fail("duration", "must be > 0");
    if (!(spec.trace.clamp_floor >= 0.0)) t->fail("clamp_floor", "must be >= 0");
  }
  if (auto l = root.optional_object("loss")) {
    if (l->boolean("enabled", true)) {
      simnet::BurstLossModel m;
      m.burst_rate = l->number("burst_rate", m.burst_rate);
      m.burst_len_min = l->unsigned_integer("burst_len_min", m.burst_len_min);
      m.burst_len_max = l->unsigned_integer("burst_len_max", m.burst_len_max);
      if (!(m.burst_rate >= 0.0 && m.burst_rate <= 1.0)) l->fail("burst_rate", "must be in [0, 1]");
      if (m.burst_len_min < 1) l->fail("burst_len_min", "must be >= 1");
      if (m.burst_len_max < m.burst_len_min) l->fail("burst_len_max", "must be >= burst_len_min");
      spec.loss = m;
    } else {
      spec.loss.reset();
    }
  }
  if (root.has("crash_time") && !document.at("crash_time").is_null()) spec.crash_time = root.number("crash_time");
  spec.post_crash_horizon = root.number("post_crash_horizon", spec.post_crash_horizon);
  spec.query_period = root.number("query_period", spec.query_period);
  const std::size_t n = root.array_size("detectors");
  for (std::size_t i = 0; i < n; ++i) {
    const ConfigNode d = root.element("detectors", i);
    DetectorSweep sweep;
    try {
      sweep.kind = detectors::parse_detector_kind(d.string("kind"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      d.fail("kind", e.what());
    }
    if (auto c = d.optional_object("config")) sweep.config = detectors::detector_config_from(*c);
    sweep.thresholds = read_thresholds(d);
    spec.detectors.push_back(std::move(sweep));
  }
  spec.validate();
  return spec;
}

std::uint64_t trial_trace_seed(std::uint64_t master, std::uint64_t trial) {
  return derive_seed(derive_seed(master, stream_id("trace")), trial);
}

std::uint64_t trial_loss_seed(std::uint64_t master, std::uint64_t trial) {
  return derive_seed(derive_seed(master, stream_id("loss")), trial);
}

HeartbeatLog make_trial_log(const SweepSpec& spec, std::uint64_t trial) {
  simnet::TraceSpec trace = spec.trace;
  trace.seed = trial_trace_seed(spec.seed, trial);
  auto points = simnet::generate_heartbeat_trace(trace);
  if (spec.loss) {
    simnet::BurstLossModel loss = *spec.loss;
    loss.seed = trial_loss_seed(spec.seed, trial);
    points = simnet::apply_burst_loss(points, loss);
  }
  const double crash = spec.effective_crash_time();
  // A heartbeat sent at the crash instant still goes out.
  std::erase_if(points, [crash](const simnet::TracePoint& p) { return p.time > crash; });
  HeartbeatLog log;
  log.arrivals = simnet::to_heartbeat_samples(points);
  log.crash = to_millis(crash);
  log.end = to_millis(crash + spec.post_crash_horizon);
  return log;
}

namespace {

struct Totals {
  std::uint64_t mistakes = 0;
  DurationMs alive_ms = 0;
  std::uint64_t correct = 0;
  std::uint64_t samples = 0;
  DurationMs detection_sum_ms = 0;
  std::uint64_t detections = 0;
  std::uint64_t censored = 0;
};

}  // namespace

SweepResult sweep_thresholds(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::vector<Totals>> totals(spec.detectors.size());
  for (std::size_t d = 0; d < spec.detectors.size(); ++d) totals[d].resize(spec.detectors[d].thresholds.size());
  const DurationMs period = to_millis(spec.query_period);

  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    const HeartbeatLog log = make_trial_log(spec, trial);
    for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
      const DetectorSweep& sweep = spec.detectors[d];
      const auto metrics = evaluate_thresholds(log, sweep.kind, sweep.config, sweep.thresholds, period);
      for (std::size_t k = 0; k < metrics.size(); ++k) {
        Totals& t = totals[d][k];
        t.mistakes += metrics[k].mistakes;
        t.alive_ms += metrics[k].alive_ms;
        t.correct += metrics[k].correct_samples;
        t.samples += metrics[k].samples;
        if (metrics[k].detection_ms) {
          t.detection_sum_ms += *metrics[k].detection_ms;
          ++t.detections;
        } else {
          ++t.censored;
        }
      }
    }
  }

  SweepResult result;
  for (std::size_t d = 0; d < spec.detectors.size(); ++d) {
    for (std::size_t k = 0; k < totals[d].size(); ++k) {
      const Totals& t = totals[d][k];
      QosReport r;
      r.detector = spec.detectors[d].kind;
      r.threshold = spec.detectors[d].thresholds[k];
      if (t.detections > 0) {
        r.detection_time = to_units(t.detection_sum_ms) / static_cast<double>(t.detections);
      }
      r.mistake_rate = t.alive_ms > 0 ? static_cast<double>(t.mistakes) / to_units(t.alive_ms) : 0.0;
      r.query_accuracy = t.samples > 0 ? static_cast<double>(t.correct) / static_cast<double>(t.samples) : 1.0;
      r.censored = t.censored;
      result.reports.push_back(r);
    }
  }
  result.metadata = run_metadata(spec);
  return result;
}

std::vector<QosReport> SweepResult::for_detector(DetectorKind kind) const {
  std::vector<QosReport> out;
  for (const auto& r : reports) {
    if (r.detector == kind) out.push_back(r);
  }
  return out;
}

json run_metadata(const SweepSpec& spec) {
  json detectors = json::array();
  for (const auto& d : spec.detectors) {
    json thresholds = json::array();
    for (double u : d.thresholds) thresholds.push_back(std::isinf(u) ? json("inf") : json(u));
    detectors.push_back({{"kind", std::string(to_string(d.kind))}, {"config", d.config}, {"thresholds", thresholds}});
  }
  json trials = json::array();
  for (std::uint64_t k = 0; k < spec.trials; ++k) {
    json t{{"trial", k}, {"trace_seed", trial_trace_seed(spec.seed, k)}};
    if (spec.loss) t["loss_seed"] = trial_loss_seed(spec.seed, k);
    trials.push_back(t);
  }
  json loss = nullptr;
  if (spec.loss) {
    loss = {{"burst_rate", spec.loss->burst_rate},
            {"burst_len_min", spec.loss->burst_len_min},
            {"burst_len_max", spec.loss->burst_len_max}};
  }
  return {{"seed", spec.seed},
          {"trials", spec.trials},
          {"time_unit_ms", kMillisPerUnit},
          {"trace",
           {{"mean", spec.trace.mean},
            {"variance", spec.trace.variance},
            {"duration", spec.trace.duration},
            {"clamp_floor", spec.trace.clamp_floor}}},
          {"loss", loss},
          {"crash_time", spec.effective_crash_time()},
          {"post_crash_horizon", spec.post_crash_horizon},
          {"query_period", spec.query_period},
          {"detectors", detectors},
          {"trial_seeds", trials}};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

std::string curve_csv(const std::vector<QosReport>& reports) {
  std::string out = "detector,threshold,detection_time,mistake_rate,query_accuracy,censored\n";
  for (const QosReport& r : reports) {
    out += to_string(r.detector);
    out += ',' + format_number(r.threshold);
    out += ',' + format_number(r.detection_time.value_or(std::nan("")));
    out += ',' + format_number(r.mistake_rate);
    out += ',' + format_number(r.query_accuracy);
    out += ',' + std::to_string(r.censored);
    out += '\n';
  }
  return out;
}

}  // namespace iotafd::qos
