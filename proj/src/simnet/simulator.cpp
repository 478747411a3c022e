#include "iotafd/simnet/simulator.hpp"

#include <array>
#include <utility>

#include "iotafd/error.hpp"

namespace iotafd::simnet {
namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 9> kKindNames{{
    {EventKind::crash, "crash"},
    {EventKind::register_offering, "register"},
    {EventKind::distribute, "distribute"},
    {EventKind::heartbeat_send, "heartbeat-send"},
    {EventKind::heartbeat_deliver, "heartbeat-deliver"},
    {EventKind::data_message, "data-message"},
    {EventKind::stimulus, "stimulus"},
    {EventKind::notify, "notify"},
    {EventKind::query, "query"},
}};

}  // namespace

std::string_view to_string(EventKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

EventKind parse_event_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw Error(Errc::invalid_argument, "unknown event kind '" + std::string(name) + "'");
}

void to_json(nlohmann::json& j, const LogRecord& r) {
  j = nlohmann::json{{"time", r.time},
                     {"kind", std::string(to_string(r.kind))},
                     {"source", r.source},
                     {"target", r.target},
                     {"detail", r.detail}};
}

void from_json(const nlohmann::json& j, LogRecord& r) {
  r.time = j.at("time").get<double>();
  r.kind = parse_event_kind(j.at("kind").get<std::string>());
  r.source = j.at("source").get<std::string>();
  r.target = j.at("target").get<std::string>();
  r.detail = j.at("detail");
}

std::string to_jsonl(const EventLog& log) {
  std::string out;
  for (const LogRecord& r : log) {
    out += nlohmann::json(r).dump();
    out += '\n';
  }
  return out;
}

EventLog parse_jsonl(std::string_view text) {
  EventLog log;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.empty()) log.push_back(nlohmann::json::parse(line).get<LogRecord>());
    pos = end + 1;
  }
  return log;
}

bool Simulator::Later::operator()(const Queued& a, const Queued& b) const {
  if (a.event.time != b.event.time) return a.event.time > b.event.time;
  if (a.event.kind != b.event.kind) return a.event.kind > b.event.kind;
  return a.order > b.order;
}

void Simulator::add_node(std::shared_ptr<Node> node) {
  const NodeId id = node->id();
  if (!nodes_.emplace(id, std::move(node)).second) {
    throw Error(Errc::invalid_argument, "duplicate node id '" + id + "'");
  }
}

Node* Simulator::node(const NodeId& id) const {
  const auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : it->second.get();
}

void Simulator::schedule(SimEvent event) {
  if (!(event.time >= now_)) {
    throw Error(Errc::scheduling, "event '" + std::string(to_string(event.kind)) + "' at " +
                                      std::to_string(event.time) + " is before the current time " +
                                      std::to_string(now_));
  }
  queue_.push({std::move(event), next_order_++});
}

std::optional<double> Simulator::crash_time(const NodeId& id) const {
  const auto it = crash_times_.find(id);
  if (it == crash_times_.end()) return std::nullopt;
  return it->second;
}

bool Simulator::suppressed(const SimEvent& event) const {
  if (event.kind == EventKind::crash) return crashed(event.target);
  const auto from = crash_times_.find(event.source);
  if (from != crash_times_.end() && event.time > from->second) return true;
  const auto to = crash_times_.find(event.target);
  return to != crash_times_.end() && event.time > to->second;
}

void Simulator::run(double until) {
  if (!started_) {
    started_ = true;
    for (auto& [id, node] : nodes_) node->start(*this);
  }
  while (!queue_.empty() && queue_.top().event.time <= until) {
    SimEvent event = queue_.top().event;
    queue_.pop();
    if (suppressed(event)) continue;
    now_ = event.time;
    if (event.kind == EventKind::crash) crash_times_.emplace(event.target, event.time);
    if (event.kind != EventKind::query || options_.log_queries) {
      log_.push_back({event.time, event.kind, event.source, event.target, event.payload});
    }
    if (Node* target = node(event.target)) target->handle(event, *this);
  }
  if (until > now_) now_ = until;
}

EventLog run_simulation(const std::vector<std::shared_ptr<Node>>& nodes, const std::vector<SimEvent>& events,
                        double until, SimulatorOptions options) {
  Simulator sim(options);
  for (const auto& n : nodes) sim.add_node(n);
  for (const auto& e : events) sim.schedule(e);
  sim.run(until);
  return sim.take_log();
}

}  // namespace iotafd::simnet
