#include "iotafd/runtime/scenario.hpp"

#include <algorithm>
#include <set>

#include "iotafd/detectors/serialize.hpp"
#include "iotafd/error.hpp"

namespace iotafd::runtime {

using simnet::EventKind;

namespace {

const simnet::NodeId kEnvironment = "environment";

choreo::Offering checked_offering(const ConfigNode& node, const choreo::CategoryTaxonomy& taxonomy) {
  choreo::Offering o = choreo::read_offering(node);
  try {
    choreo::validate_offering(o, taxonomy);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    node.fail("category", e.what());
  }
  return o;
}

double non_negative(const ConfigNode& node, std::string_view key, double fallback) {
  const double v = node.number(key, fallback);
  if (!(v >= 0.0)) node.fail(key, "must be >= 0");
  return v;
}

double positive(const ConfigNode& node, std::string_view key, double fallback) {
  const double v = node.number(key, fallback);
  if (!(v > 0.0)) node.fail(key, "must be > 0");
  return v;
}

}  // namespace

Scenario read_scenario(const ConfigNode& node) {
  Scenario s;
  s.choreography = choreo::read_choreography(node);
  s.seed = node.unsigned_integer("seed", s.seed);
  s.horizon = positive(node, "horizon", s.horizon);
  if (const auto hb = node.optional_object("heartbeat")) {
    s.engine.heartbeat_period = positive(*hb, "period", s.engine.heartbeat_period);
    s.engine.heartbeat_jitter = non_negative(*hb, "jitter", s.engine.heartbeat_jitter);
    s.engine.monitor_period = positive(*hb, "monitor_period", s.engine.monitor_period);
    s.engine.link_delay = non_negative(*hb, "link_delay", s.engine.link_delay);
  }
  s.controller.control_latency = non_negative(node, "control_latency", 0.0);
  if (const auto ring = node.optional_object("ring_detector")) {
    try {
      s.controller.ring_kind = detectors::parse_detector_kind(ring->string("kind", "iota"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      ring->fail("kind", e.what());
    }
    if (const auto c = ring->optional_object("config")) s.controller.ring_config = detectors::detector_config_from(*c);
  }
  if (const auto behaviors = node.optional_object("behaviors")) {
    for (const auto& [category, name] : behaviors->json().items()) {
      if (!name.is_string() || !is_builtin_behavior(name.get<std::string>())) {
        behaviors->fail(category, "expected one of toggle, record, passthrough, and");
      }
      if (!s.choreography.taxonomy.contains(category)) behaviors->fail(category, "unknown category");
      s.behaviors.assign(category, name.get<std::string>());
    }
  }

  std::set<choreo::OfferingId> known;
  if (node.has("offerings")) {
    for (std::size_t i = 0; i < node.array_size("offerings"); ++i) {
      const ConfigNode o = node.element("offerings", i);
      const double at = non_negative(o, "register_at", 0.0);
      s.registrations.push_back({at, s.choreography.registry.at(o.string("id"))});
      known.insert(o.string("id"));
    }
  }
  if (node.has("registrations")) {
    for (std::size_t i = 0; i < node.array_size("registrations"); ++i) {
      const ConfigNode r = node.element("registrations", i);
      const double at = non_negative(r, "time", 0.0);
      s.registrations.push_back({at, checked_offering(r.object("offering"), s.choreography.taxonomy)});
      known.insert(s.registrations.back().offering.id);
    }
  }
  std::stable_sort(s.registrations.begin(), s.registrations.end(),
                   [](const RegistrationSpec& a, const RegistrationSpec& b) { return a.time < b.time; });
  if (node.has("crashes")) {
    for (std::size_t i = 0; i < node.array_size("crashes"); ++i) {
      const ConfigNode c = node.element("crashes", i);
      CrashSpec crash{non_negative(c, "time", 0.0), c.string("offering")};
      if (!known.contains(crash.offering)) c.fail("offering", "no offering '" + crash.offering + "' in the scenario");
      s.crashes.push_back(crash);
    }
  }
  if (node.has("stimuli")) {
    for (std::size_t i = 0; i < node.array_size("stimuli"); ++i) {
      const ConfigNode c = node.element("stimuli", i);
      StimulusSpec st;
      st.time = non_negative(c, "time", 0.0);
      st.offering = c.string("offering");
      if (!known.contains(st.offering)) c.fail("offering", "no offering '" + st.offering + "' in the scenario");
      st.value = c.has("value") ? c.json().at("value") : Value();
      st.every = non_negative(c, "every", 0.0);
      st.until = c.number("until", s.horizon);
      s.stimuli.push_back(st);
    }
  }
  if (const auto a = node.optional_object("assertions")) {
    if (a->has("failover_deadline")) s.assertions.failover_deadline = positive(*a, "failover_deadline", 15.0);
    s.assertions.revalidate = a->boolean("revalidate", true);
    if (const auto st = a->optional_object("statuses")) {
      for (const auto& [rrc, status] : st->json().items()) {
        if (!s.choreography.rrcs.contains(rrc)) st->fail(rrc, "unknown RRC");
        try {
          s.assertions.statuses.emplace(rrc, choreo::parse_rrc_status(status.is_string() ? status.get<std::string>() : ""));
        } catch (const Error& e) {
          st->fail(rrc, e.what());
        }
      }
    }
  }
  return s;
}

ScenarioResult run_scenario(const Scenario& scenario) {
  simnet::Simulator sim;
  const auto& choreography = scenario.choreography;
  auto controller = std::make_shared<Controller>(choreography.taxonomy, choreography.recipes, choreography.rrcs,
                                                 scenario.controller);
  sim.add_node(controller);

  EngineOptions engine_options = scenario.engine;
  engine_options.seed = scenario.seed;
  std::map<choreo::OfferingId, std::shared_ptr<Engine>> engines;
  for (const auto& r : scenario.registrations) {
    if (engines.contains(r.offering.id)) continue;
    auto engine = std::make_shared<Engine>(
        r.offering, scenario.behaviors.resolve(r.offering.category, choreography.taxonomy), engine_options);
    engines.emplace(r.offering.id, engine);
    sim.add_node(engine);
  }

  for (const auto& r : scenario.registrations) {
    sim.schedule({r.time, EventKind::register_offering, r.offering.id, kControllerId, Value(r.offering)});
  }
  for (const auto& c : scenario.crashes) sim.schedule({c.time, EventKind::crash, kEnvironment, c.offering, {}});
  for (const auto& st : scenario.stimuli) {
    for (std::uint64_t k = 0;; ++k) {
      const double t = st.time + static_cast<double>(k) * st.every;
      if (t > st.until || t > scenario.horizon) break;
      sim.schedule({t, EventKind::stimulus, kEnvironment, st.offering, Value{{"value", st.value}}});
      if (!(st.every > 0.0)) break;
    }
  }

  ScenarioResult result;
  std::vector<CrashSpec> crashes = scenario.crashes;
  std::stable_sort(crashes.begin(), crashes.end(), [](const CrashSpec& a, const CrashSpec& b) { return a.time < b.time; });
  for (const auto& c : crashes) {
    if (c.time > scenario.horizon) continue;
    sim.run(c.time);
    FailoverReport report;
    report.failed = c.offering;
    report.crash_time = sim.crash_time(c.offering).value_or(c.time);
    for (const auto& [id, rrc] : controller->rrcs()) {
      if (rrc.status != choreo::RrcStatus::active) continue;
      for (const auto& [ingredient, offerings] : rrc.assignment) {
        if (std::find(offerings.begin(), offerings.end(), c.offering) != offerings.end()) report.was_assigned = true;
      }
    }
    result.failovers.push_back(report);
  }
  sim.run(scenario.horizon);

  result.log = sim.take_log();
  for (auto& report : result.failovers) {
    const auto& recoveries = controller->recoveries();
    const auto rec = std::find_if(recoveries.begin(), recoveries.end(),
                                  [&](const Recovery& r) { return r.failed == report.failed; });
    if (rec == recoveries.end()) continue;
    report.detected_at = rec->time;
    report.revalidated = rec->violations.empty();
    const bool all_active = std::all_of(rec->rrcs.begin(), rec->rrcs.end(),
                                        [](const auto& e) { return e.second == choreo::RrcStatus::active; });
    if (!all_active) continue;
    double done = rec->time;
    for (const auto& e : result.log) {
      if (e.kind == EventKind::distribute && e.detail.value("cause", "") == "failure:" + report.failed) {
        done = std::max(done, e.time);
      }
    }
    report.completed_at = done;
  }

  const auto& a = scenario.assertions;
  if (a.failover_deadline) {
    for (const auto& f : result.failovers) {
      if (!f.was_assigned) continue;
      const auto d = f.duration();
      if (!d) {
        result.assertion_failures.push_back("failover after crash of '" + f.failed + "' never completed");
      } else if (!(*d < *a.failover_deadline)) {
        result.assertion_failures.push_back("failover after crash of '" + f.failed + "' took " + std::to_string(*d) +
                                            " (deadline " + std::to_string(*a.failover_deadline) + ")");
      }
    }
  }
  if (a.revalidate) {
    for (const auto& v : controller->consistency_violations()) result.assertion_failures.push_back(v);
    for (const auto& r : controller->recoveries()) {
      for (const auto& v : r.violations) {
        result.assertion_failures.push_back("after recovery of '" + r.failed + "': " + v);
      }
    }
  }
  for (const auto& [rrc, status] : a.statuses) {
    const auto actual = controller->rrcs().at(rrc).status;
    if (actual != status) {
      result.assertion_failures.push_back("RRC '" + rrc + "' is " + std::string(choreo::to_string(actual)) +
                                          ", expected " + std::string(choreo::to_string(status)));
    }
  }

  result.controller_state = controller->dump();
  for (const auto& [id, engine] : engines) result.engines.emplace(id, engine->dump());
  return result;
}

}  // namespace iotafd::runtime
