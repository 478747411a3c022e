#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "iotafd/config_reader.hpp"
#include "iotafd/error.hpp"
#include "iotafd/runtime/controller.hpp"
#include "iotafd/runtime/engine.hpp"
#include "iotafd/runtime/scenario.hpp"

namespace iotafd::runtime {
namespace {

using choreo::InteractionDescriptor;
using choreo::Offering;
using choreo::RrcStatus;
using simnet::EventKind;

choreo::CategoryTaxonomy taxonomy() {
  choreo::CategoryTaxonomy t;
  t.add_category("Device");
  t.add_category("Switch", {"Device"});
  t.add_category("Light", {"Device"});
  t.add_category("DimmableLight", {"Light"});
  return t;
}

choreo::Recipe recipe() {
  return {"room-lights",
          {{"switch", "Switch", {}, {{"state", "bool"}}, {"location"}},
           {"light", "Light", {{"power", "bool"}}, {}, {"location"}}},
          {{{"switch", "state"}, {"light", "power"}}}};
}

Offering make_switch(const std::string& id, const std::string& location = "Room A") {
  return {id, "Switch", {}, {{"button", "bool"}}, {{"location", location}}};
}

Offering make_light(const std::string& id, const std::string& location = "Room A") {
  return {id, "Light", {{"on", "bool"}}, {}, {{"location", location}}};
}

choreo::Rrc room_rrc(std::uint64_t max_lights = 8) {
  choreo::Rrc r;
  r.id = "room-a";
  r.recipe_id = "room-lights";
  const auto rule = choreo::OsrExpr::compare(choreo::OsrExpr::Op::eq, "location", std::string("Room A"));
  r.osrs["switch"] = {rule, {1, 1}};
  r.osrs["light"] = {rule, {1, max_lights}};
  return r;
}

Controller make_controller() {
  return Controller(taxonomy(), {{"room-lights", recipe()}}, {{"room-a", room_rrc()}});
}

std::set<std::string> offerings_of(const std::vector<InteractionDescriptor>& ds) {
  std::set<std::string> out;
  for (const auto& d : ds) out.insert(d.offering);
  return out;
}

std::set<std::pair<std::string, std::string>> ring_pairs(const Controller& c) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& l : c.links()) {
    if (l.rrc.empty()) out.emplace(l.monitor, l.monitored);
  }
  return out;
}

ScenarioResult run_config(const std::string& name) {
  const auto doc = load_config_file(std::string(IOTAFD_CONFIG_DIR) + "/" + name);
  return run_scenario(read_scenario(ConfigNode(doc, name)));
}

// --- behaviours ----------------------------------------------------------------

TEST(Behavior, BuiltinsComputeAsDocumented) {
  Value state = Value::object();
  const auto toggle = builtin_behavior("toggle");
  EXPECT_EQ(toggle({{}, Value()}, state), Value(true));
  EXPECT_EQ(toggle({{}, Value()}, state), Value(false));
  EXPECT_EQ(toggle({{}, Value(true)}, state), Value(true));
  EXPECT_EQ(state["on"], true);

  Value light = Value::object();
  const auto record = builtin_behavior("record");
  EXPECT_EQ(record({{{"on", true}}, std::nullopt}, light), Value(true));
  EXPECT_EQ(light["value"], true);
  EXPECT_EQ(light["updates"], 1);
  EXPECT_FALSE(record({{}, Value(1)}, light).has_value());

  Value none = Value::object();
  EXPECT_EQ(builtin_behavior("passthrough")({{{"x", 4}}, std::nullopt}, none), Value(4));
  EXPECT_EQ(builtin_behavior("and")({{{"a", true}, {"b", false}}, std::nullopt}, none), Value(false));
  EXPECT_EQ(builtin_behavior("and")({{{"a", true}, {"b", true}}, std::nullopt}, none), Value(true));
  EXPECT_THROW(builtin_behavior("blink"), Error);
}

TEST(Behavior, TableResolvesNearestAncestor) {
  BehaviorTable table;
  table.assign("Light", "record");
  table.assign("Device", "and");
  EXPECT_EQ(table.resolve_name("DimmableLight", taxonomy()), "record");
  EXPECT_EQ(table.resolve_name("Switch", taxonomy()), "and");
  EXPECT_EQ(BehaviorTable{}.resolve_name("Switch", taxonomy()), "passthrough");
  EXPECT_THROW(table.assign("Light", "blink"), Error);
}

// --- engine ------------------------------------------------------------------------

InteractionDescriptor two_input_descriptor() {
  InteractionDescriptor d;
  d.offering = "gate";
  d.category = "Device";
  d.inputs = {{"a", {"s1", "out"}, "r"}, {"b", {"s2", "out"}, "r"}};
  d.outputs = {{"out", {"l1", "in"}, "r"}, {"out", {"l2", "in"}, "r"}};
  return d;
}

TEST(Engine, SingleInputComputesAndEmitsToEveryTarget) {
  Engine e({"relay", "Device", {{"a", "bool"}}, {{"out", "bool"}}, {}}, builtin_behavior("passthrough"), {});
  InteractionDescriptor d = two_input_descriptor();
  d.inputs.pop_back();
  e.install(d);
  const auto out = e.process_input("a", true);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].target, "l1");
  EXPECT_EQ(out[1].target, "l2");
  EXPECT_EQ(out[0].port, "in");
  EXPECT_EQ(out[1].value, Value(true));
  EXPECT_TRUE(e.buffer().empty());
}

TEST(Engine, IncompleteInputsWait) {
  Engine e({"gate", "Device", {}, {}, {}}, builtin_behavior("and"), {});
  e.install(two_input_descriptor());
  EXPECT_TRUE(e.process_input("a", true).empty());
  EXPECT_EQ(e.buffer().size(), 1u);
  EXPECT_TRUE(e.process_input("a", true).empty());  // same port overwrites
  const auto out = e.process_input("b", true);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].value, Value(true));
  EXPECT_TRUE(e.buffer().empty());
}

TEST(Engine, UnboundPortIsARoutingError) {
  Engine e({"gate", "Device", {}, {}, {}}, builtin_behavior("and"), {});
  e.install(two_input_descriptor());
  try {
    e.process_input("c", true);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::routing);
  }
}

TEST(Engine, RebindingClearsTheBuffer) {
  Engine e({"gate", "Device", {}, {}, {}}, builtin_behavior("and"), {});
  e.install(two_input_descriptor());
  e.process_input("a", true);
  InteractionDescriptor d = two_input_descriptor();
  d.inputs[0].source = {"s3", "out"};
  e.install(d);
  EXPECT_TRUE(e.buffer().empty());
}

// An engine monitoring one peer that heartbeats every second with small jitter.
struct MonitorRig {
  Engine engine{{"watcher", "Light", {}, {}, {}}, builtin_behavior("record"), {}};
  double t = 0.0;
  std::uint64_t seq = 1;
  std::mt19937_64 gen{3};

  MonitorRig() {
    InteractionDescriptor d;
    d.offering = "watcher";
    d.monitoring = {{"peer", "r", detectors::DetectorKind::iota, {}}};
    engine.install(d);
  }

  // Heartbeats for `beats` periods, ticking every 0.1; returns notifications.
  std::size_t beat(int beats) {
    std::size_t notes = 0;
    for (int i = 0; i < beats; ++i) {
      const double next = t + 1.0 + 0.05 * (static_cast<double>(gen() % 21) - 10.0) / 10.0;
      notes += tick_until(next);
      engine.receive_heartbeat("peer", t, seq++);
    }
    return notes;
  }

  std::size_t tick_until(double until) {
    std::size_t notes = 0;
    for (double q = std::floor(t * 10.0 + 1.0) / 10.0; q < until; q += 0.1) notes += engine.monitor_tick(q).size();
    t = until;
    return notes;
  }
};

TEST(Engine, CurrentHeartbeatsRaiseNoNotification) {
  MonitorRig rig;
  EXPECT_EQ(rig.beat(120), 0u);
  EXPECT_FALSE(rig.engine.suspects({"peer", "r"}));
}

TEST(Engine, CrashedPeerIsReportedExactlyOnce) {
  MonitorRig rig;
  rig.beat(80);
  EXPECT_EQ(rig.tick_until(rig.t + 600.0), 1u);
  EXPECT_TRUE(rig.engine.suspects({"peer", "r"}));
  // Heartbeats resume and stop again: a second transition, a second
  // notification. The long gap is now part of the estimate, so the second
  // crossing comes later.
  EXPECT_EQ(rig.beat(80), 0u);
  EXPECT_FALSE(rig.engine.suspects({"peer", "r"}));
  EXPECT_EQ(rig.tick_until(rig.t + 5000.0), 1u);
}

TEST(Engine, HeartbeatBeforeCrossingPreventsNotification) {
  MonitorRig rig;
  rig.beat(80);
  // Find the crossing on a copy, then let the real heartbeat arrive just before it.
  MonitorRig probe = rig;
  double crossing = rig.t;
  for (double q = std::floor(rig.t * 10.0 + 1.0) / 10.0;; q += 0.1) {
    if (!probe.engine.monitor_tick(q).empty()) {
      crossing = q;
      break;
    }
  }
  ASSERT_GT(crossing, rig.t + 1.0);
  EXPECT_EQ(rig.tick_until(crossing - 0.05), 0u);
  rig.engine.receive_heartbeat("peer", rig.t, rig.seq++);
  EXPECT_EQ(rig.tick_until(rig.t + 1.0), 0u);
  EXPECT_FALSE(rig.engine.suspects({"peer", "r"}));
}

TEST(Engine, DetectorsFollowTheMonitoringEntries) {
  MonitorRig rig;
  rig.beat(10);
  InteractionDescriptor d = *rig.engine.descriptor();
  d.monitoring.push_back({"other", "", detectors::DetectorKind::phi, {}});
  rig.engine.install(d);
  EXPECT_EQ(rig.engine.monitored_links(),
            (std::vector<Engine::LinkKey>{{"other", ""}, {"peer", "r"}}));
  d.monitoring.erase(d.monitoring.begin());
  rig.engine.install(d);
  EXPECT_EQ(rig.engine.monitored_links(), (std::vector<Engine::LinkKey>{{"other", ""}}));
}

// --- controller ------------------------------------------------------------------

TEST(Controller, MatchingLightActivatesTheRrc) {
  Controller c = make_controller();
  c.register_offering(make_switch("sw-1"));
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::unsatisfied);
  const auto changed = c.register_offering(make_light("li-1"));
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::active);
  EXPECT_EQ(offerings_of(changed), (std::set<std::string>{"sw-1", "li-1"}));
  EXPECT_EQ(c.descriptors().at("sw-1").outputs.size(), 1u);
}

TEST(Controller, NonMatchingOfferingOnlyChangesTheRing) {
  Controller c = make_controller();
  c.register_offering(make_switch("sw-1"));
  c.register_offering(make_light("li-1"));
  c.register_offering(make_light("hall-1", "Hall"));
  const auto before = c.rrcs();
  const auto changed = c.register_offering(make_light("hall-2", "Hall"));
  EXPECT_EQ(c.rrcs(), before);
  EXPECT_EQ(offerings_of(changed), (std::set<std::string>{"hall-1", "hall-2"}));
  EXPECT_EQ(ring_pairs(c), (std::set<std::pair<std::string, std::string>>{{"hall-1", "hall-2"}, {"hall-2", "hall-1"}}));
}

TEST(Controller, LocationChangeEvictsOnReRegistration) {
  Controller c = make_controller();
  for (const auto& o : {make_switch("sw-1"), make_light("li-1"), make_light("li-2")}) c.register_offering(o);
  EXPECT_EQ(c.rrcs().at("room-a").assignment.at("light"), (std::vector<std::string>{"li-1", "li-2"}));
  const auto changed = c.register_offering(make_light("li-1", "Room B"));
  EXPECT_EQ(c.rrcs().at("room-a").assignment.at("light"), std::vector<std::string>{"li-2"});
  EXPECT_TRUE(offerings_of(changed).contains("li-1"));
  EXPECT_TRUE(c.descriptors().at("li-1").inputs.empty());
}

TEST(Controller, MalformedDescriptionLeavesRegistryUnchanged) {
  Controller c = make_controller();
  c.register_offering(make_switch("sw-1"));
  Offering bad = make_light("li-1");
  bad.category = "Lamp";
  EXPECT_THROW(c.register_offering(bad), Error);
  Offering dup = make_light("li-1");
  dup.inputs.push_back({"on", "int"});
  EXPECT_THROW(c.register_offering(dup), Error);
  EXPECT_EQ(c.registry().size(), 1u);
}

TEST(Controller, FailoverToSecondSwitch) {
  Controller c = make_controller();
  for (const auto& o : {make_switch("sw-1"), make_switch("sw-2"), make_light("li-1"), make_light("li-2")}) {
    c.register_offering(o);
  }
  EXPECT_EQ(c.rrcs().at("room-a").assignment.at("switch"), std::vector<std::string>{"sw-1"});
  const auto changed = c.handle_failure("sw-1", "li-1", 61.0);
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::active);
  EXPECT_EQ(c.rrcs().at("room-a").assignment.at("switch"), std::vector<std::string>{"sw-2"});
  EXPECT_EQ(offerings_of(changed), (std::set<std::string>{"sw-2", "li-1", "li-2"}));
  EXPECT_EQ(c.descriptors().at("li-1").inputs.at(0).source.node, "sw-2");
  EXPECT_FALSE(c.descriptors().contains("sw-1"));
  // A second report of the same failure changes nothing.
  EXPECT_TRUE(c.handle_failure("sw-1", "li-2", 61.1).empty());
  EXPECT_EQ(c.recoveries().size(), 1u);
  EXPECT_TRUE(c.consistency_violations().empty());
}

TEST(Controller, OnlyCandidateFailureDegradesAndRegistrationRestores) {
  Controller c = make_controller();
  c.register_offering(make_switch("sw-1"));
  c.register_offering(make_light("li-1"));
  c.handle_failure("sw-1");
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::degraded);
  c.register_offering(make_light("li-2"));
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::degraded);
  c.register_offering(make_switch("sw-1"));  // re-registration resurrects it
  EXPECT_EQ(c.rrcs().at("room-a").status, RrcStatus::active);
  EXPECT_FALSE(c.failed().contains("sw-1"));
}

TEST(Controller, UnusedFailureRepairsTheRing) {
  Controller c = make_controller();
  for (const auto& o : {make_switch("sw-1"), make_light("li-1"), make_light("h1", "Hall"), make_light("h2", "Hall"),
                        make_light("h3", "Hall")}) {
    c.register_offering(o);
  }
  EXPECT_EQ(ring_pairs(c), (std::set<std::pair<std::string, std::string>>{{"h1", "h2"}, {"h2", "h3"}, {"h3", "h1"}}));
  const auto rrcs = c.rrcs();
  c.handle_failure("h2");
  EXPECT_EQ(c.rrcs(), rrcs);
  EXPECT_EQ(ring_pairs(c), (std::set<std::pair<std::string, std::string>>{{"h1", "h3"}, {"h3", "h1"}}));
}

TEST(Controller, UnknownFailureIsIgnoredWithWarning) {
  Controller c = make_controller();
  EXPECT_TRUE(c.handle_failure("ghost").empty());
  EXPECT_EQ(c.warnings().size(), 1u);
}

// Random register/fail sequences: active RRCs always re-validate.
TEST(Controller, ConsistencyAfterRandomEvents) {
  std::mt19937_64 gen(17);
  const std::array<std::string, 3> rooms{"Room A", "Room B", "Hall"};
  for (int round = 0; round < 100; ++round) {
    Controller c = make_controller();
    for (int step = 0; step < 30; ++step) {
      const std::string id = "o" + std::to_string(gen() % 8);
      if (gen() % 3 == 0 && !c.registry().empty()) {
        c.handle_failure(id);
      } else {
        const std::string& room = rooms[gen() % rooms.size()];
        c.register_offering(gen() % 2 ? make_switch(id, room) : make_light(id, room));
      }
      ASSERT_TRUE(c.consistency_violations().empty()) << round << " " << step;
      for (const auto& [id2, d] : c.descriptors()) ASSERT_FALSE(c.failed().contains(id2));
    }
  }
}

// --- scenarios ---------------------------------------------------------------------

TEST(Scenario, DemoFailsOverWithinDeadline) {
  const ScenarioResult r = run_config("demo_scenario.json");
  EXPECT_TRUE(r.assertion_failures.empty()) << r.assertion_failures.front();
  ASSERT_EQ(r.failovers.size(), 1u);
  const auto& f = r.failovers[0];
  EXPECT_TRUE(f.was_assigned);
  ASSERT_TRUE(f.duration().has_value());
  EXPECT_LT(*f.duration(), 15.0);
  EXPECT_TRUE(f.revalidated);

  // The replacement switch drives both lights after recovery.
  std::set<std::string> driven;
  for (const auto& e : r.log) {
    if (e.kind == EventKind::data_message && e.source == "sw-2" && e.time > *f.completed_at) driven.insert(e.target);
  }
  EXPECT_EQ(driven, (std::set<std::string>{"li-1", "li-2"}));
  EXPECT_EQ(r.engines.at("li-1")["state"]["value"], r.engines.at("sw-2")["state"]["on"]);
}

TEST(Scenario, ControllerIsSilentBetweenDistributions) {
  const ScenarioResult r = run_config("demo_scenario.json");
  // Before the crash, nothing involves the controller after the initial set-up.
  double setup_done = 0.0;
  for (const auto& e : r.log) {
    if (e.time < 60.3 && (e.kind == EventKind::register_offering || e.kind == EventKind::distribute)) {
      setup_done = std::max(setup_done, e.time);
    }
  }
  for (const auto& e : r.log) {
    if (e.time > setup_done && e.time < 60.3) {
      EXPECT_NE(e.source, kControllerId);
      EXPECT_NE(e.target, kControllerId);
    }
  }
  // The lights did toggle during that window: the engines worked on their own.
  const auto data = std::count_if(r.log.begin(), r.log.end(), [&](const simnet::LogRecord& e) {
    return e.kind == EventKind::data_message && e.time > setup_done && e.time < 60.3;
  });
  EXPECT_GT(data, 0);
}

// Both lights monitor sw-1. The first report re-points the other light's
// link to sw-2, so at most one notification per (monitor, monitored) pair.
TEST(Scenario, NotificationsAreOncePerLink) {
  const ScenarioResult r = run_config("demo_scenario.json");
  std::map<std::pair<std::string, std::string>, int> by_link;
  for (const auto& e : r.log) {
    if (e.kind == EventKind::notify) ++by_link[{e.source, e.detail.at("monitored").get<std::string>()}];
  }
  ASSERT_FALSE(by_link.empty());
  for (const auto& [link, n] : by_link) {
    EXPECT_EQ(link.second, "sw-1");
    EXPECT_EQ(n, 1) << link.first;
  }
}

TEST(Scenario, EmptyRegistryLeavesRrcUnsatisfied) {
  const ScenarioResult r = run_config("empty_registry.json");
  EXPECT_TRUE(r.assertion_failures.empty());
  EXPECT_EQ(r.controller_state["rrcs"][0]["status"], "unsatisfied");
}

TEST(Scenario, SoleCandidateCrashDegrades) {
  const ScenarioResult r = run_config("sole_candidate_crash.json");
  EXPECT_TRUE(r.assertion_failures.empty());
  EXPECT_EQ(r.controller_state["rrcs"][0]["status"], "degraded");
  ASSERT_EQ(r.failovers.size(), 1u);
  EXPECT_TRUE(r.failovers[0].detected_at.has_value());
  EXPECT_FALSE(r.failovers[0].completed_at.has_value());
}

TEST(Scenario, RunsAreDeterministic) {
  const ScenarioResult a = run_config("demo_scenario.json");
  const ScenarioResult b = run_config("demo_scenario.json");
  EXPECT_EQ(simnet::to_jsonl(a.log), simnet::to_jsonl(b.log));
  EXPECT_EQ(a.controller_state.dump(), b.controller_state.dump());
}

TEST(Scenario, DiagnosticsNameTheField) {
  auto doc = load_config_file(std::string(IOTAFD_CONFIG_DIR) + "/demo_scenario.json");
  doc["crashes"][0]["offering"] = "nobody";
  try {
    read_scenario(ConfigNode(doc, "demo"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("crashes[0].offering"), std::string::npos) << e.what();
  }
  doc = load_config_file(std::string(IOTAFD_CONFIG_DIR) + "/demo_scenario.json");
  doc["heartbeat"]["period"] = -1;
  try {
    read_scenario(ConfigNode(doc, "demo"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("heartbeat.period"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace iotafd::runtime
