#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iotafd/error.hpp"
#include "iotafd/simnet/heartbeat_nodes.hpp"
#include "iotafd/simnet/loss.hpp"
#include "iotafd/simnet/simulator.hpp"
#include "iotafd/simnet/trace.hpp"

namespace iotafd::simnet {
namespace {

std::vector<double> intervals_of(const std::vector<TracePoint>& trace) {
  std::vector<double> out;
  for (std::size_t i = 1; i < trace.size(); ++i) out.push_back(trace[i].time - trace[i - 1].time);
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

// E[max(X, f)] for X ~ normal(mu, sigma^2).
double clamped_normal_mean(double mu, double sigma, double f) {
  const double a = (f - mu) / sigma;
  return f * normal_cdf(a) + mu * (1.0 - normal_cdf(a)) + sigma * normal_pdf(a);
}

// --- generate_heartbeat_trace ------------------------------------------------------

TEST(Trace, DeterministicForSameSeed) {
  TraceSpec spec;
  spec.duration = 2000;
  spec.seed = 99;
  EXPECT_EQ(generate_heartbeat_trace(spec), generate_heartbeat_trace(spec));
  TraceSpec other = spec;
  other.seed = 100;
  EXPECT_NE(generate_heartbeat_trace(spec), generate_heartbeat_trace(other));
}

TEST(Trace, ZeroVarianceIsPeriodic) {
  TraceSpec spec;
  spec.mean = 1.0;
  spec.variance = 0.0;
  spec.duration = 100.0;
  const auto trace = generate_heartbeat_trace(spec);
  ASSERT_EQ(trace.size(), 101u);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    EXPECT_NEAR(trace[i].time, static_cast<double>(i), 1e-9);
    EXPECT_EQ(trace[i].seq, i + 1);
  }
}

TEST(Trace, ClampedIntervalsMatchTheGeneratorParameters) {
  TraceSpec spec;  // normal(1, 9), floor 1e-3
  spec.seed = 7;
  // Draw 1e5 intervals by generating a long trace and truncating.
  spec.duration = 200000.0;
  auto intervals = intervals_of(generate_heartbeat_trace(spec));
  ASSERT_GE(intervals.size(), 100000u);
  intervals.resize(100000);
  const double mean = std::accumulate(intervals.begin(), intervals.end(), 0.0) / 1e5;
  EXPECT_NEAR(mean, clamped_normal_mean(1.0, 3.0, spec.clamp_floor), 0.03);
  const auto within = std::count_if(intervals.begin(), intervals.end(), [](double d) { return d > 0.0 && d <= 5.0; });
  EXPECT_NEAR(static_cast<double>(within) / 1e5, normal_cdf(4.0 / 3.0), 0.01);
  // Differences of absolute times carry rounding error.
  EXPECT_GE(*std::min_element(intervals.begin(), intervals.end()), spec.clamp_floor * (1.0 - 1e-6));
}

TEST(Trace, UnclampedBulkHasTheRequestedMean) {
  TraceSpec spec;
  spec.variance = 0.04;  // clamping is practically never triggered
  spec.duration = 100000.0;
  spec.seed = 3;
  auto intervals = intervals_of(generate_heartbeat_trace(spec));
  intervals.resize(std::min<std::size_t>(intervals.size(), 100000));
  const double mean = std::accumulate(intervals.begin(), intervals.end(), 0.0) / static_cast<double>(intervals.size());
  EXPECT_NEAR(mean, 1.0, 0.05);
}

TEST(Trace, TimestampsStrictlyIncrease) {
  TraceSpec spec;
  spec.duration = 20000;
  const auto trace = generate_heartbeat_trace(spec);
  const auto samples = to_heartbeat_samples(trace);
  ASSERT_EQ(samples.size(), trace.size());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    ASSERT_GT(trace[i].time, trace[i - 1].time);
    ASSERT_GT(samples[i].timestamp, samples[i - 1].timestamp);
    ASSERT_GT(samples[i].seq, samples[i - 1].seq);
  }
}

TEST(Trace, MillisecondCollisionsAreBumped) {
  const auto samples = to_heartbeat_samples({{0.0, 1}, {0.0004, 2}, {0.0011, 3}, {0.0049, 4}});
  ASSERT_EQ(samples.size(), 4u);
  EXPECT_EQ(samples[0].timestamp, 0);
  EXPECT_EQ(samples[1].timestamp, 1);
  EXPECT_EQ(samples[2].timestamp, 2);
  EXPECT_EQ(samples[3].timestamp, 5);
  EXPECT_EQ(to_millis(0.0015), 2);  // half-up
}

TEST(Trace, RejectsInvalidSpecs) {
  TraceSpec spec;
  spec.variance = -1;
  EXPECT_THROW((void)generate_heartbeat_trace(spec), Error);
  spec = {};
  spec.duration = 0;
  EXPECT_THROW((void)generate_heartbeat_trace(spec), Error);
}

// --- apply_burst_loss -----------------------------------------------------------

std::vector<TracePoint> periodic(std::size_t n) {
  std::vector<TracePoint> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back({static_cast<double>(i), i + 1});
  return t;
}

TEST(BurstLoss, ZeroRateIsIdentity) {
  BurstLossModel model;
  model.burst_rate = 0.0;
  const auto trace = periodic(1000);
  EXPECT_EQ(apply_burst_loss(trace, model), trace);
}

TEST(BurstLoss, CertainUnitBurstsAlternate) {
  BurstLossModel model;
  model.burst_rate = 1.0;
  model.burst_len_min = model.burst_len_max = 1;
  // Hand trace: deliver #1 then burst(1) drops #2; deliver #3, drop #4; ...
  const auto out = apply_burst_loss(periodic(6), model);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].seq, 1u);
  EXPECT_EQ(out[1].seq, 3u);
  EXPECT_EQ(out[2].seq, 5u);
}

TEST(BurstLoss, DeterministicOrderedSubset) {
  BurstLossModel model;
  model.burst_rate = 0.2;
  model.seed = 42;
  const auto trace = periodic(5000);
  const auto a = apply_burst_loss(trace, model);
  EXPECT_EQ(a, apply_burst_loss(trace, model));
  EXPECT_LT(a.size(), trace.size());
  EXPECT_TRUE(std::includes(trace.begin(), trace.end(), a.begin(), a.end(),
                            [](const TracePoint& x, const TracePoint& y) { return x.seq < y.seq; }));
  // Every gap is a burst of 1..4.
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto gap = a[i].seq - a[i - 1].seq - 1;
    ASSERT_LE(gap, 4u);
  }
}

TEST(BurstLoss, RejectsInvalidModels) {
  BurstLossModel model;
  model.burst_rate = 1.5;
  EXPECT_THROW(BurstLossProcess{model}, Error);
  model = {};
  model.burst_len_min = 3;
  model.burst_len_max = 2;
  EXPECT_THROW(BurstLossProcess{model}, Error);
}

// --- run_simulation ---------------------------------------------------------------

class Recorder final : public Node {
 public:
  explicit Recorder(NodeId id) : id_(std::move(id)) {}
  const NodeId& id() const override { return id_; }
  void handle(const SimEvent& e, Simulator&) override { seen.push_back(e); }
  std::vector<SimEvent> seen;

 private:
  NodeId id_;
};

TEST(Simulator, EmptyEventSetGivesEmptyLog) { EXPECT_TRUE(run_simulation({}, {}, 100.0).empty()); }

TEST(Simulator, OrdersByTimeKindThenInsertion) {
  auto r = std::make_shared<Recorder>("r");
  const std::vector<SimEvent> events{
      {2.0, EventKind::query, "x", "r", {{"i", 0}}},
      {1.0, EventKind::data_message, "x", "r", {{"i", 1}}},
      {1.0, EventKind::heartbeat_deliver, "x", "r", {{"i", 2}}},
      {1.0, EventKind::data_message, "x", "r", {{"i", 3}}},
      {1.0, EventKind::crash, "env", "y", {{"i", 4}}},
  };
  const auto log = run_simulation({r}, events, 10.0, {.log_queries = true});
  std::vector<int> order;
  for (const auto& rec : log) order.push_back(rec.detail.at("i").get<int>());
  EXPECT_EQ(order, (std::vector<int>{4, 2, 1, 3, 0}));
}

TEST(Simulator, RejectsEventsInThePast) {
  Simulator sim;
  sim.run(5.0);
  try {
    sim.schedule({4.0, EventKind::data_message, "a", "b", {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::scheduling);
  }
  EXPECT_NO_THROW(sim.schedule({5.0, EventKind::data_message, "a", "b", {}}));
}

TEST(Simulator, CrashSuppressesLaterEventsFromTheNode) {
  TraceSpec spec;
  spec.variance = 0.0;
  spec.duration = 30.0;
  auto sender = std::make_shared<HeartbeatSender>("s", "m", generate_heartbeat_trace(spec), std::nullopt);
  auto monitor = std::make_shared<HeartbeatMonitor>("m", detectors::AnyDetector(detectors::DetectorKind::iota, {}));
  const auto log = run_simulation({sender, monitor}, {{10.0, EventKind::crash, "env", "s", {}}}, 40.0);
  double last_delivery = -1;
  for (const auto& rec : log) {
    if (rec.source == "s") {
      EXPECT_LE(rec.time, 10.0) << to_string(rec.kind);
    }
    if (rec.kind == EventKind::heartbeat_deliver) last_delivery = rec.time;
  }
  EXPECT_DOUBLE_EQ(last_delivery, 10.0);
  EXPECT_EQ(monitor->arrivals().size(), 11u);
}

TEST(Simulator, DeliveriesToCrashedTargetsAreDropped) {
  auto r = std::make_shared<Recorder>("r");
  const auto log = run_simulation({r},
                                  {{1.0, EventKind::crash, "env", "r", {}},
                                   {1.0, EventKind::data_message, "x", "r", {}},
                                   {2.0, EventKind::data_message, "x", "r", {}}},
                                  5.0);
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[1].time, 1.0);
}

EventLog pair_run(const std::vector<std::pair<std::string, std::uint64_t>>& pairs) {
  std::vector<std::shared_ptr<Node>> nodes;
  std::vector<SimEvent> events;
  for (const auto& [name, seed] : pairs) {
    TraceSpec spec;
    spec.duration = 300.0;
    spec.seed = seed;
    BurstLossModel loss;
    loss.burst_rate = 0.05;
    loss.seed = seed + 1;
    nodes.push_back(std::make_shared<HeartbeatSender>(name + ".s", name + ".m", generate_heartbeat_trace(spec), loss));
    nodes.push_back(std::make_shared<HeartbeatMonitor>(
        name + ".m", detectors::AnyDetector(detectors::DetectorKind::phi, {}), 0.5));
    events.push_back({150.0, EventKind::crash, "env", name + ".s", {}});
  }
  return run_simulation(nodes, events, 400.0, {.log_queries = true});
}

EventLog only(const EventLog& log, const std::string& prefix) {
  EventLog out;
  for (const auto& r : log) {
    if (r.source.starts_with(prefix) || r.target.starts_with(prefix)) out.push_back(r);
  }
  return out;
}

TEST(Simulator, IndependentPairsCompose) {
  const auto a = pair_run({{"a", 11}});
  const auto b = pair_run({{"b", 23}});
  const auto both = pair_run({{"a", 11}, {"b", 23}});
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(only(both, "a."), a);
  EXPECT_EQ(only(both, "b."), b);
  EXPECT_EQ(both.size(), a.size() + b.size());
}

TEST(Simulator, RunsAreBitIdentical) {
  const auto x = to_jsonl(pair_run({{"a", 5}, {"b", 6}}));
  EXPECT_EQ(x, to_jsonl(pair_run({{"a", 5}, {"b", 6}})));
  EXPECT_EQ(to_jsonl(parse_jsonl(x)), x);
}

TEST(Simulator, MonitorSeesTheSurvivingTrace) {
  TraceSpec spec;
  spec.duration = 500.0;
  spec.seed = 8;
  BurstLossModel loss;
  loss.burst_rate = 0.1;
  loss.seed = 9;
  const auto trace = generate_heartbeat_trace(spec);
  auto sender = std::make_shared<HeartbeatSender>("s", "m", trace, loss);
  auto monitor = std::make_shared<HeartbeatMonitor>("m", detectors::AnyDetector(detectors::DetectorKind::iota, {}));
  (void)run_simulation({sender, monitor}, {}, 1000.0);
  EXPECT_EQ(monitor->arrivals(), to_heartbeat_samples(apply_burst_loss(trace, loss)));
}

}  // namespace
}  // namespace iotafd::simnet
