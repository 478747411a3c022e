#include "iotafd/runtime/controller.hpp"

#include <algorithm>

#include "iotafd/error.hpp"

namespace iotafd::runtime {

using choreo::RrcStatus;
using simnet::EventKind;
using simnet::SimEvent;
using simnet::Simulator;

Controller::Controller(choreo::CategoryTaxonomy taxonomy, std::map<std::string, choreo::Recipe> recipes,
                       std::map<std::string, choreo::Rrc> rrcs, ControllerOptions options)
    : taxonomy_(std::move(taxonomy)), recipes_(std::move(recipes)), rrcs_(std::move(rrcs)), options_(options) {
  for (auto& [id, rrc] : rrcs_) {
    if (!recipes_.contains(rrc.recipe_id)) {
      throw Error(Errc::invalid_argument, "RRC '" + id + "' references unknown recipe '" + rrc.recipe_id + "'");
    }
    rrc.assignment.clear();
    rrc.status = RrcStatus::unsatisfied;
  }
}

choreo::Rrc Controller::rediscover(const choreo::Rrc& rrc) const {
  choreo::Rrc out = choreo::instantiate_rrc(rrc, recipes_.at(rrc.recipe_id), registry_, taxonomy_, failed_);
  // An RRC that ran before and lost an ingredient is degraded, not new.
  if (out.status == RrcStatus::unsatisfied && rrc.status != RrcStatus::unsatisfied) out.status = RrcStatus::degraded;
  return out;
}

std::vector<choreo::InteractionDescriptor> Controller::redistribute() {
  links_ = choreo::derive_monitoring_links(rrcs_, recipes_, registry_, failed_, options_.ring_kind,
                                           options_.ring_config);
  auto all = choreo::build_descriptors(rrcs_, recipes_, registry_, taxonomy_, failed_, links_);
  std::vector<choreo::InteractionDescriptor> changed;
  for (auto& [id, d] : all) {
    const auto old = distributed_.find(id);
    if (old == distributed_.end() || old->second != d) changed.push_back(d);
  }
  distributed_ = std::move(all);
  return changed;
}

std::vector<choreo::InteractionDescriptor> Controller::register_offering(const choreo::Offering& offering) {
  choreo::validate_offering(offering, taxonomy_);
  registry_.insert_or_assign(offering.id, offering);
  failed_.erase(offering.id);
  for (auto& [id, rrc] : rrcs_) rrc = rediscover(rrc);
  return redistribute();
}

std::vector<choreo::InteractionDescriptor> Controller::handle_failure(const choreo::OfferingId& failed,
                                                                      const choreo::OfferingId& reported_by,
                                                                      double time) {
  if (!registry_.contains(failed)) {
    warnings_.push_back("failure notification for unknown offering '" + failed + "' ignored");
    return {};
  }
  if (!failed_.insert(failed).second) return {};
  Recovery recovery{failed, reported_by, time, {}, {}, {}};
  for (auto& [id, rrc] : rrcs_) {
    const bool contains = std::any_of(rrc.assignment.begin(), rrc.assignment.end(), [&](const auto& entry) {
      return std::find(entry.second.begin(), entry.second.end(), failed) != entry.second.end();
    });
    if (!contains) continue;
    rrc = rediscover(rrc);
    recovery.rrcs.emplace(id, rrc.status);
  }
  auto changed = redistribute();
  for (const auto& d : changed) recovery.distributed.push_back(d.offering);
  recovery.violations = consistency_violations();
  recoveries_.push_back(std::move(recovery));
  return changed;
}

void Controller::distribute(const std::vector<choreo::InteractionDescriptor>& changed, const std::string& cause,
                            Simulator& sim) {
  for (const auto& d : changed) {
    sim.schedule({sim.now() + options_.control_latency, EventKind::distribute, id(), d.offering,
                  Value{{"cause", cause}, {"descriptor", d}}});
  }
}

void Controller::handle(const SimEvent& event, Simulator& sim) {
  switch (event.kind) {
    case EventKind::register_offering: {
      try {
        const choreo::Offering o = choreo::read_offering(ConfigNode(event.payload, "registration:" + event.source));
        distribute(register_offering(o), "register:" + o.id, sim);
      } catch (const Error& e) {
        warnings_.push_back(std::string("registration rejected: ") + e.what());
        sim.record({event.time, event.kind, id(), event.source, Value{{"warning", warnings_.back()}}});
      }
      return;
    }
    case EventKind::notify: {
      pending_.push_back(event);
      while (!pending_.empty()) {
        const SimEvent n = std::move(pending_.front());
        pending_.pop_front();
        const auto monitored = n.payload.at("monitored").get<std::string>();
        const std::size_t warnings = warnings_.size();
        distribute(handle_failure(monitored, n.source, n.time), "failure:" + monitored, sim);
        if (warnings_.size() > warnings) {
          sim.record({n.time, n.kind, id(), n.source, Value{{"warning", warnings_.back()}}});
        }
      }
      return;
    }
    default:
      return;
  }
}

std::vector<std::string> Controller::consistency_violations() const {
  std::vector<std::string> out;
  for (const auto& [id, rrc] : rrcs_) {
    if (rrc.status != RrcStatus::active) continue;
    for (const auto& v : choreo::assignment_violations(rrc, recipes_.at(rrc.recipe_id), registry_, taxonomy_)) {
      out.push_back("RRC '" + id + "': " + v);
    }
    for (const auto& [ingredient, offerings] : rrc.assignment) {
      for (const auto& o : offerings) {
        if (failed_.contains(o)) out.push_back("RRC '" + id + "': failed offering '" + o + "' still assigned");
      }
    }
  }
  return out;
}

Value Controller::dump() const {
  Value j = Value::object();
  j["registry"] = Value::array();
  for (const auto& [id, o] : registry_) j["registry"].push_back(o);
  j["failed"] = failed_;
  j["rrcs"] = Value::array();
  for (const auto& [id, r] : rrcs_) j["rrcs"].push_back(r);
  j["links"] = links_;
  j["descriptors"] = Value::object();
  for (const auto& [id, d] : distributed_) j["descriptors"][id] = d;
  j["recoveries"] = Value::array();
  for (const auto& r : recoveries_) {
    Value rj{{"failed", r.failed}, {"reported_by", r.reported_by}, {"time", r.time}, {"distributed", r.distributed},
             {"violations", r.violations}};
    rj["rrcs"] = Value::object();
    for (const auto& [id, s] : r.rrcs) rj["rrcs"][id] = std::string(choreo::to_string(s));
    j["recoveries"].push_back(std::move(rj));
  }
  j["pending"] = pending_.size();
  j["warnings"] = warnings_;
  return j;
}

}  // namespace iotafd::runtime
