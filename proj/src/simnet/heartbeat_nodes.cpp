#include "iotafd/simnet/heartbeat_nodes.hpp"

#include "iotafd/error.hpp"

namespace iotafd::simnet {

HeartbeatSender::HeartbeatSender(NodeId id, NodeId target, std::vector<TracePoint> trace,
                                 std::optional<BurstLossModel> loss, double link_delay)
    : id_(std::move(id)), target_(std::move(target)), trace_(std::move(trace)), link_delay_(link_delay) {
  if (loss) loss_.emplace(*loss);
  if (!(link_delay_ >= 0.0)) throw Error(Errc::invalid_argument, "link delay must be >= 0");
}

void HeartbeatSender::start(Simulator& sim) {
  if (trace_.empty()) return;
  sim.schedule({trace_.front().time, EventKind::heartbeat_send, id_, id_, {{"index", 0}, {"seq", trace_.front().seq}}});
}

void HeartbeatSender::handle(const SimEvent& event, Simulator& sim) {
  if (event.kind != EventKind::heartbeat_send) return;
  const auto index = event.payload.at("index").get<std::size_t>();
  const TracePoint& p = trace_.at(index);
  if (!loss_ || loss_->deliver()) {
    sim.schedule({p.time + link_delay_, EventKind::heartbeat_deliver, id_, target_, {{"seq", p.seq}, {"resource", 1.0}}});
  }
  if (index + 1 < trace_.size()) {
    const TracePoint& next = trace_[index + 1];
    sim.schedule({next.time, EventKind::heartbeat_send, id_, id_, {{"index", index + 1}, {"seq", next.seq}}});
  }
}

HeartbeatMonitor::HeartbeatMonitor(NodeId id, detectors::AnyDetector detector, double query_period)
    : id_(std::move(id)), detector_(std::move(detector)), query_period_(query_period) {}

void HeartbeatMonitor::start(Simulator& sim) {
  if (query_period_ > 0.0) sim.schedule({sim.now() + query_period_, EventKind::query, id_, id_, {{"tick", 1}}});
}

void HeartbeatMonitor::handle(const SimEvent& event, Simulator& sim) {
  switch (event.kind) {
    case EventKind::heartbeat_deliver: {
      const TimestampMs* previous = arrivals_.empty() ? nullptr : &arrivals_.back().timestamp;
      const detectors::HeartbeatSample hb{arrival_millis(event.time, previous), event.payload.at("seq").get<std::uint64_t>(),
                                          event.payload.value("resource", 1.0)};
      detector_.record_heartbeat(hb);
      arrivals_.push_back(hb);
      break;
    }
    case EventKind::query: {
      if (detector_.has_heartbeat()) verdicts_.push_back({event.time, detector_.is_suspected(to_millis(event.time))});
      const auto tick = event.payload.at("tick").get<std::uint64_t>() + 1;
      // Multiplying avoids drift from repeated addition.
      sim.schedule({static_cast<double>(tick) * query_period_, EventKind::query, id_, id_, {{"tick", tick}}});
      break;
    }
    default:
      break;
  }
}

}  // namespace iotafd::simnet
