#include "iotafd/runtime/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "iotafd/choreo/json_io.hpp"
#include "iotafd/detectors/serialize.hpp"
#include "iotafd/error.hpp"
#include "iotafd/simnet/trace.hpp"

namespace iotafd::runtime {

using simnet::EventKind;
using simnet::SimEvent;
using simnet::Simulator;

Engine::Engine(choreo::Offering offering, Behavior behavior, EngineOptions options)
    : offering_(std::move(offering)),
      behavior_(std::move(behavior)),
      options_(options),
      rng_(derive_seed(options.seed, stream_id("engine:" + offering_.id))) {
  if (!(options_.heartbeat_period > 0.0) || !(options_.monitor_period > 0.0)) {
    throw Error(Errc::invalid_argument, "engine periods must be > 0");
  }
}

void Engine::start(Simulator& sim) {
  const double phase = rng_.uniform() * options_.heartbeat_period;
  sim.schedule({sim.now() + phase, EventKind::heartbeat_send, id(), id(), Value::object()});
  sim.schedule({sim.now() + options_.monitor_period, EventKind::query, id(), id(), Value::object()});
}

void Engine::handle(const SimEvent& event, Simulator& sim) {
  switch (event.kind) {
    case EventKind::crash:
      failed_ = true;
      return;
    case EventKind::distribute:
      install(choreo::read_descriptor(event.payload.at("descriptor")));
      return;
    case EventKind::heartbeat_send: {
      if (descriptor_ && !descriptor_->heartbeat_targets.empty()) {
        const std::uint64_t seq = next_seq_++;
        for (const auto& target : descriptor_->heartbeat_targets) {
          sim.schedule({sim.now() + options_.link_delay, EventKind::heartbeat_deliver, id(), target,
                        Value{{"seq", seq}}});
        }
      }
      const double gap = options_.heartbeat_period + rng_.normal(0.0, options_.heartbeat_jitter);
      sim.schedule({sim.now() + std::max(gap, 0.01 * options_.heartbeat_period), EventKind::heartbeat_send, id(), id(),
                    Value::object()});
      return;
    }
    case EventKind::heartbeat_deliver:
      receive_heartbeat(event.source, event.time, event.payload.at("seq").get<std::uint64_t>());
      return;
    case EventKind::query: {
      for (const Notification& n : monitor_tick(event.time)) {
        Value payload{{"monitored", n.monitored}, {"rrc", n.rrc}, {"time", n.time}};
        payload["suspicion"] = std::isfinite(n.suspicion) ? Value(n.suspicion) : Value("inf");
        sim.schedule({event.time, EventKind::notify, id(), kControllerId, std::move(payload)});
      }
      sim.schedule({event.time + options_.monitor_period, EventKind::query, id(), id(), Value::object()});
      return;
    }
    case EventKind::data_message:
      try {
        send(process_input(event.payload.at("port").get<std::string>(), event.payload.at("value")), sim);
      } catch (const Error& e) {
        sim.record({event.time, event.kind, id(), event.source, Value{{"warning", e.what()}}});
      }
      return;
    case EventKind::stimulus:
      send(process_stimulus(event.payload.value("value", Value())), sim);
      return;
    default:
      return;
  }
}

void Engine::install(choreo::InteractionDescriptor descriptor) {
  if (!descriptor_ || descriptor_->inputs != descriptor.inputs) buffer_.clear();
  std::map<LinkKey, Link> links;
  for (const auto& entry : descriptor.monitoring) {
    LinkKey key{entry.monitored, entry.rrc};
    const auto old = links_.find(key);
    if (old != links_.end() && old->second.entry == entry) {
      links.emplace(key, std::move(old->second));
    } else {
      links.emplace(key, Link{entry, detectors::AnyDetector(entry.kind, entry.config), false});
    }
  }
  links_ = std::move(links);
  descriptor_ = std::move(descriptor);
}

std::vector<Emission> Engine::emit(const std::optional<Value>& value) const {
  std::vector<Emission> out;
  if (!value || !descriptor_) return out;
  for (const auto& t : descriptor_->outputs) out.push_back({t.target.node, t.target.port, *value});
  return out;
}

void Engine::send(const std::vector<Emission>& emissions, Simulator& sim) const {
  for (const auto& e : emissions) {
    sim.schedule({sim.now() + options_.link_delay, EventKind::data_message, id(), e.target,
                  Value{{"port", e.port}, {"value", e.value}}});
  }
}

std::vector<Emission> Engine::process_input(const std::string& port, const Value& value) {
  std::set<std::string> bound;
  if (descriptor_) {
    for (const auto& b : descriptor_->inputs) bound.insert(b.port);
  }
  if (!bound.contains(port)) {
    throw Error(Errc::routing, "offering '" + id() + "' has no binding for input '" + port + "'");
  }
  buffer_[port] = value;
  if (buffer_.size() < bound.size()) return {};
  Activation a;
  a.inputs = std::move(buffer_);
  buffer_.clear();
  return emit(behavior_(a, state_));
}

std::vector<Emission> Engine::process_stimulus(const Value& value) {
  Activation a;
  a.stimulus = value;
  return emit(behavior_(a, state_));
}

void Engine::receive_heartbeat(const choreo::OfferingId& from, double time, std::uint64_t seq) {
  for (auto& [key, link] : links_) {
    if (key.first != from) continue;
    const TimestampMs last = link.detector.last_timestamp();
    const TimestampMs ts = simnet::arrival_millis(time, link.detector.has_heartbeat() ? &last : nullptr);
    try {
      link.detector.record_heartbeat({ts, seq});
    } catch (const Error&) {
      // A duplicate or reordered heartbeat carries no information.
    }
  }
}

std::vector<Notification> Engine::monitor_tick(double now) {
  std::vector<Notification> out;
  const TimestampMs now_ms = to_millis(now);
  for (auto& [key, link] : links_) {
    const bool suspected = link.detector.has_heartbeat() && link.detector.is_suspected(now_ms);
    if (suspected && !link.suspected) {
      out.push_back({key.first, key.second, link.detector.suspicion(now_ms), now});
    }
    link.suspected = suspected;
  }
  return out;
}

std::vector<Engine::LinkKey> Engine::monitored_links() const {
  std::vector<LinkKey> out;
  for (const auto& [key, link] : links_) out.push_back(key);
  return out;
}

bool Engine::suspects(const LinkKey& link) const {
  const auto it = links_.find(link);
  return it != links_.end() && it->second.suspected;
}

Value Engine::dump() const {
  Value j{{"offering", id()}, {"category", offering_.category}, {"state", state_}, {"failed", failed_}};
  j["descriptor"] = descriptor_ ? Value(*descriptor_) : Value();
  j["links"] = Value::array();
  for (const auto& [key, link] : links_) {
    j["links"].push_back({{"monitored", key.first}, {"rrc", key.second}, {"suspected", link.suspected}});
  }
  return j;
}

}  // namespace iotafd::runtime
