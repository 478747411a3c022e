#include "iotafd/detectors/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "iotafd/error.hpp"

namespace iotafd::detectors {

using nlohmann::json;

std::string accumulator_to_string(Accumulator v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

Accumulator accumulator_from_string(const std::string& s) {
  if (s.empty()) throw Error(Errc::invalid_argument, "empty accumulator string");
  Accumulator v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw Error(Errc::invalid_argument, "bad accumulator digit in '" + s + "'");
    const Accumulator next = v * 10 + static_cast<Accumulator>(c - '0');
    if (next / 10 != v) throw Error(Errc::invalid_argument, "accumulator overflow in '" + s + "'");
    v = next;
  }
  return v;
}

void to_json(json& j, const DetectorConfig& c) {
  j = json{{"threshold_U", std::isinf(c.threshold) ? json("inf") : json(c.threshold)},
           {"omega_max", c.omega_max},
           {"omega_min", c.omega_min},
           {"alpha", c.alpha},
           {"loss_window", c.loss_window},
           {"bootstrap_period", c.bootstrap_period},
           {"bootstrap_variance", c.bootstrap_variance}};
}

void from_json(const json& j, DetectorConfig& c) {
  DetectorConfig out;
  if (j.contains("threshold_U")) {
    const json& u = j.at("threshold_U");
    out.threshold = u.is_string() && u.get<std::string>() == "inf" ? std::numeric_limits<double>::infinity()
                                                                     : u.get<double>();
  }
  out.omega_max = j.value("omega_max", out.omega_max);
  out.omega_min = j.value("omega_min", out.omega_min);
  out.alpha = j.value("alpha", out.alpha);
  out.loss_window = j.value("loss_window", out.loss_window);
  out.bootstrap_period = j.value("bootstrap_period", out.bootstrap_period);
  out.bootstrap_variance = j.value("bootstrap_variance", out.bootstrap_variance);
  out.validate();
  c = out;
}

DetectorConfig detector_config_from(const ConfigNode& node) {
  DetectorConfig c;
  c.threshold = node.extended_number("threshold_U", c.threshold);
  if (!(c.threshold >= 0.0)) node.fail("threshold_U", "must be >= 0");
  c.omega_max = node.unsigned_integer("omega_max", c.omega_max);
  c.omega_min = node.unsigned_integer("omega_min", c.omega_min);
  if (c.omega_min < 2) node.fail("omega_min", "must be >= 2");
  if (c.omega_max < c.omega_min) node.fail("omega_max", "must be >= omega_min");
  c.alpha = node.number("alpha", c.alpha);
  if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) node.fail("alpha", "must be in [0, 1]");
  c.loss_window = node.unsigned_integer("loss_window", c.loss_window);
  if (c.loss_window < 1) node.fail("loss_window", "must be >= 1");
  c.bootstrap_period = node.number("bootstrap_period", c.bootstrap_period);
  if (!(c.bootstrap_period > 0.0)) node.fail("bootstrap_period", "must be > 0");
  c.bootstrap_variance = node.number("bootstrap_variance", c.bootstrap_variance);
  if (!(c.bootstrap_variance >= 0.0)) node.fail("bootstrap_variance", "must be >= 0");
  c.validate();
  return c;
}

void to_json(json& j, const HeartbeatSample& hb) {
  j = json{{"timestamp", hb.timestamp}, {"seq", hb.seq}, {"resource_level", hb.resource_level}};
}

void from_json(const json& j, HeartbeatSample& hb) {
  hb.timestamp = j.at("timestamp").get<TimestampMs>();
  hb.seq = j.at("seq").get<std::uint64_t>();
  hb.resource_level = j.value("resource_level", 1.0);
}

namespace {

void put_clock(json& j, const ArrivalClock& c) {
  j["has_heartbeat"] = c.started;
  j["last_timestamp"] = c.last_timestamp;
  j["last_seq"] = c.last_seq;
}

ArrivalClock get_clock(const json& j) {
  return {j.at("has_heartbeat").get<bool>(), j.at("last_timestamp").get<TimestampMs>(),
          j.at("last_seq").get<std::uint64_t>()};
}

void put_estimator(json& j, const RecursiveEstimatorState& e) {
  j["rho_sum"] = accumulator_to_string(e.rho_sum);
  j["kappa_sum"] = accumulator_to_string(e.kappa_sum);
  j["n"] = e.n;
  j["has_frozen"] = e.has_frozen;
  j["frozen_mu"] = e.frozen_mu;
  j["frozen_var"] = e.frozen_var;
}

RecursiveEstimatorState get_estimator(const json& j) {
  RecursiveEstimatorState e;
  e.rho_sum = accumulator_from_string(j.at("rho_sum").get<std::string>());
  e.kappa_sum = accumulator_from_string(j.at("kappa_sum").get<std::string>());
  e.n = j.at("n").get<std::uint64_t>();
  e.has_frozen = j.at("has_frozen").get<bool>();
  e.frozen_mu = j.at("frozen_mu").get<double>();
  e.frozen_var = j.at("frozen_var").get<double>();
  return e;
}

// Fixed-width little-endian writer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void u128(Accumulator v) {
    u64(static_cast<std::uint64_t>(v));
    u64(static_cast<std::uint64_t>(v >> 64));
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

void write(ByteWriter& w, const DetectorConfig& c) {
  w.f64(c.threshold);
  w.u64(c.omega_max);
  w.u64(c.omega_min);
  w.f64(c.alpha);
  w.u64(c.loss_window);
  w.f64(c.bootstrap_period);
  w.f64(c.bootstrap_variance);
}

void write(ByteWriter& w, const ArrivalClock& c) {
  w.u8(c.started ? 1 : 0);
  w.i64(c.last_timestamp);
  w.u64(c.last_seq);
}

void write(ByteWriter& w, const RecursiveEstimatorState& e) {
  w.u128(e.rho_sum);
  w.u128(e.kappa_sum);
  w.u64(e.n);
  w.u8(e.has_frozen ? 1 : 0);
  w.f64(e.frozen_mu);
  w.f64(e.frozen_var);
}

}  // namespace

void to_json(json& j, const IotaDetectorState& s) {
  j = json::object();
  j["config"] = s.config;
  put_clock(j, s.clock);
  put_estimator(j, s.estimator);
  const PacketLossState& l = s.loss_state;
  j["loss_state"] = json{{"alpha", l.alpha},
                         {"p_prev", l.p_prev},
                         {"last_seq", l.last_seq},
                         {"has_seq", l.has_seq},
                         {"window_len", l.window_len}};
  json ring = json::array();
  for (std::size_t i = 0; i < s.resource_ring.count; ++i) ring.push_back(s.resource_ring.samples[i]);
  j["resource_ring"] = std::move(ring);
}

void from_json(const json& j, IotaDetectorState& s) {
  IotaDetectorState out;
  out.config = j.at("config").get<DetectorConfig>();
  out.clock = get_clock(j);
  out.estimator = get_estimator(j);
  const json& l = j.at("loss_state");
  out.loss_state = {l.at("alpha").get<double>(), l.at("p_prev").get<double>(), l.at("last_seq").get<std::uint64_t>(),
                    l.at("has_seq").get<bool>(), l.at("window_len").get<std::uint64_t>()};
  const json& ring = j.at("resource_ring");
  if (ring.size() > out.resource_ring.samples.size()) {
    throw Error(Errc::invalid_argument, "resource_ring holds more than 4 samples");
  }
  for (const json& hb : ring) out.resource_ring.push(hb.get<HeartbeatSample>());
  s = std::move(out);
}

void to_json(json& j, const PhiDetectorState& s) {
  j = json::object();
  j["config"] = s.config;
  put_clock(j, s.clock);
  put_estimator(j, s.estimator);
}

void from_json(const json& j, PhiDetectorState& s) {
  PhiDetectorState out;
  out.config = j.at("config").get<DetectorConfig>();
  out.clock = get_clock(j);
  out.estimator = get_estimator(j);
  s = std::move(out);
}

void to_json(json& j, const AdaptiveDetectorState& s) {
  j = json::object();
  j["config"] = s.config;
  put_clock(j, s.clock);
  // Oldest first, so the document does not depend on the ring position.
  std::vector<DurationMs> window(s.window);
  std::rotate(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(s.head), window.end());
  j["window"] = std::move(window);
}

void from_json(const json& j, AdaptiveDetectorState& s) {
  AdaptiveDetectorState out;
  out.config = j.at("config").get<DetectorConfig>();
  out.clock = get_clock(j);
  out.window = j.at("window").get<std::vector<DurationMs>>();
  if (out.window.size() > out.config.omega_max) {
    throw Error(Errc::invalid_argument, "window holds more than omega_max intervals");
  }
  out.head = 0;
  s = std::move(out);
}

std::vector<std::uint8_t> checkpoint_bytes(const IotaDetectorState& s) {
  ByteWriter w;
  write(w, s.config);
  write(w, s.clock);
  write(w, s.estimator);
  w.f64(s.loss_state.alpha);
  w.f64(s.loss_state.p_prev);
  w.u64(s.loss_state.last_seq);
  w.u8(s.loss_state.has_seq ? 1 : 0);
  w.u64(s.loss_state.window_len);
  w.u8(s.resource_ring.count);
  for (const HeartbeatSample& hb : s.resource_ring.samples) {
    w.i64(hb.timestamp);
    w.u64(hb.seq);
    w.f64(hb.resource_level);
  }
  return w.take();
}

std::vector<std::uint8_t> checkpoint_bytes(const PhiDetectorState& s) {
  ByteWriter w;
  write(w, s.config);
  write(w, s.clock);
  write(w, s.estimator);
  return w.take();
}

std::vector<std::uint8_t> checkpoint_bytes(const AdaptiveDetectorState& s) {
  ByteWriter w;
  write(w, s.config);
  write(w, s.clock);
  w.u64(s.window.size());
  w.u64(s.head);
  for (DurationMs d : s.window) w.i64(d);
  return w.take();
}

}  // namespace iotafd::detectors
