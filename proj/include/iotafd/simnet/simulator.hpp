#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace iotafd::simnet {

using NodeId = std::string;

// Declaration order is the tie-break priority for events at the same instant.
enum class EventKind : std::uint8_t {
  crash,
  register_offering,
  distribute,
  heartbeat_send,
  heartbeat_deliver,
  data_message,
  stimulus,
  notify,
  query,
};

std::string_view to_string(EventKind kind) noexcept;
EventKind parse_event_kind(std::string_view name);

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::query;
  NodeId source;
  NodeId target;
  nlohmann::json payload;
};

struct LogRecord {
  double time = 0.0;
  EventKind kind = EventKind::query;
  NodeId source;
  NodeId target;
  nlohmann::json detail;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

void to_json(nlohmann::json& j, const LogRecord& r);
void from_json(const nlohmann::json& j, LogRecord& r);

using EventLog = std::vector<LogRecord>;

// One JSON object per line, in log order.
std::string to_jsonl(const EventLog& log);
EventLog parse_jsonl(std::string_view text);

class Simulator;

// A participant in the simulation. Events whose target is this node's id are
// routed to handle().
class Node {
 public:
  virtual ~Node() = default;
  virtual const NodeId& id() const = 0;
  virtual void handle(const SimEvent& event, Simulator& sim) = 0;
  // Called once before the first event is processed.
  virtual void start(Simulator&) {}
};

struct SimulatorOptions {
  // Periodic self-ticks dominate the log without carrying information.
  bool log_queries = false;
};

// Deterministic discrete-event loop. Events are processed in (time, kind,
// insertion order). After a node crashes at T, events it sources and
// deliveries it would receive with time > T are dropped.
class Simulator {
 public:
  explicit Simulator(SimulatorOptions options = {}) : options_(options) {}

  void add_node(std::shared_ptr<Node> node);
  Node* node(const NodeId& id) const;

  // Throws Errc::scheduling if event.time is before now().
  void schedule(SimEvent event);

  // Processes every event with time <= until; now() ends at `until`.
  void run(double until);

  double now() const noexcept { return now_; }
  bool crashed(const NodeId& id) const { return crash_times_.contains(id); }
  std::optional<double> crash_time(const NodeId& id) const;

  // Appends a reaction that is not itself an event.
  void record(LogRecord record) { log_.push_back(std::move(record)); }

  const EventLog& log() const noexcept { return log_; }
  EventLog take_log() { return std::move(log_); }

 private:
  struct Queued {
    SimEvent event;
    std::uint64_t order = 0;
  };
  struct Later {
    bool operator()(const Queued& a, const Queued& b) const;
  };

  bool suppressed(const SimEvent& event) const;

  SimulatorOptions options_;
  std::map<NodeId, std::shared_ptr<Node>> nodes_;
  std::priority_queue<Queued, std::vector<Queued>, Later> queue_;
  std::map<NodeId, double> crash_times_;
  EventLog log_;
  double now_ = 0.0;
  std::uint64_t next_order_ = 0;
  bool started_ = false;
};

EventLog run_simulation(const std::vector<std::shared_ptr<Node>>& nodes, const std::vector<SimEvent>& events,
                        double until, SimulatorOptions options = {});

}  // namespace iotafd::simnet
