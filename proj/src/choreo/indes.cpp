#include "iotafd/choreo/indes.hpp"

#include <algorithm>

#include "iotafd/error.hpp"

namespace iotafd::choreo {
namespace {

InteractionDescriptor& descriptor_for(std::map<OfferingId, InteractionDescriptor>& out, const Offering& offering) {
  auto& d = out[offering.id];
  d.offering = offering.id;
  d.category = offering.category;
  return d;
}

const Offering& registered(const Registry& registry, const OfferingId& id) {
  const auto it = registry.find(id);
  if (it == registry.end()) throw Error(Errc::state, "assigned offering '" + id + "' is not registered");
  return it->second;
}

std::string mapped(const std::optional<PortMapping>& m, Direction dir, const std::string& port,
                          const OfferingId& id) {
  if (!m) throw Error(Errc::state, "offering '" + id + "' no longer matches its ingredient");
  const auto& side = dir == Direction::input ? m->inputs : m->outputs;
  return side.at(port);
}

void add_routing(std::map<OfferingId, InteractionDescriptor>& out, const Rrc& rrc, const Recipe& recipe,
                 const Registry& registry, const CategoryTaxonomy& taxonomy) {
  if (rrc.status != RrcStatus::active) {
    throw Error(Errc::state, "RRC '" + rrc.id + "' is not active");
  }
  for (const auto& [ingredient_id, offerings] : rrc.assignment) {
    for (const auto& id : offerings) descriptor_for(out, registered(registry, id));
  }
  for (const Interaction& x : recipe.interactions) {
    const Ingredient& from = *recipe.ingredient(x.from.node);
    const Ingredient& to = *recipe.ingredient(x.to.node);
    const auto senders = rrc.assignment.find(from.id);
    const auto receivers = rrc.assignment.find(to.id);
    if (senders == rrc.assignment.end() || receivers == rrc.assignment.end()) continue;
    for (const auto& a : senders->second) {
      const Offering& oa = registered(registry, a);
      const std::string out_port = mapped(map_ports(from, oa, taxonomy), Direction::output, x.from.port, a);
      for (const auto& b : receivers->second) {
        const Offering& ob = registered(registry, b);
        const std::string in_port = mapped(map_ports(to, ob, taxonomy), Direction::input, x.to.port, b);
        out[a].outputs.push_back({out_port, {b, in_port}, rrc.id});
        out[b].inputs.push_back({in_port, {a, out_port}, rrc.id});
      }
    }
  }
}

void add_monitoring(std::map<OfferingId, InteractionDescriptor>& out, const std::vector<MonitoringLink>& links) {
  for (const MonitoringLink& l : links) {
    const auto monitor = out.find(l.monitor);
    const auto monitored = out.find(l.monitored);
    if (monitor == out.end() || monitored == out.end()) continue;
    monitor->second.monitoring.push_back({l.monitored, l.rrc, l.kind, l.config});
    monitored->second.heartbeat_targets.push_back(l.monitor);
  }
}

void normalise(std::map<OfferingId, InteractionDescriptor>& out) {
  for (auto& [id, d] : out) {
    std::sort(d.inputs.begin(), d.inputs.end());
    d.inputs.erase(std::unique(d.inputs.begin(), d.inputs.end()), d.inputs.end());
    std::sort(d.outputs.begin(), d.outputs.end());
    d.outputs.erase(std::unique(d.outputs.begin(), d.outputs.end()), d.outputs.end());
    std::stable_sort(d.monitoring.begin(), d.monitoring.end(), [](const MonitoringEntry& a, const MonitoringEntry& b) {
      return std::tie(a.monitored, a.rrc) < std::tie(b.monitored, b.rrc);
    });
    std::sort(d.heartbeat_targets.begin(), d.heartbeat_targets.end());
    d.heartbeat_targets.erase(std::unique(d.heartbeat_targets.begin(), d.heartbeat_targets.end()),
                              d.heartbeat_targets.end());
  }
}

}  // namespace

std::map<OfferingId, InteractionDescriptor> generate_interaction_descriptors(const Rrc& rrc, const Recipe& recipe,
                                                                             const Registry& registry,
                                                                             const CategoryTaxonomy& taxonomy) {
  std::map<OfferingId, InteractionDescriptor> out;
  add_routing(out, rrc, recipe, registry, taxonomy);
  add_monitoring(out, derive_rrc_links(rrc, recipe));
  normalise(out);
  return out;
}

std::map<OfferingId, InteractionDescriptor> build_descriptors(const std::map<std::string, Rrc>& rrcs,
                                                              const std::map<std::string, Recipe>& recipes,
                                                              const Registry& registry,
                                                              const CategoryTaxonomy& taxonomy,
                                                              const std::set<OfferingId>& failed,
                                                              const std::vector<MonitoringLink>& links) {
  std::map<OfferingId, InteractionDescriptor> out;
  for (const auto& [id, offering] : registry) {
    if (!failed.contains(id)) descriptor_for(out, offering);
  }
  for (const auto& [id, rrc] : rrcs) {
    if (rrc.status != RrcStatus::active) continue;
    const auto recipe = recipes.find(rrc.recipe_id);
    if (recipe == recipes.end()) {
      throw Error(Errc::invalid_argument, "RRC '" + id + "' references unknown recipe '" + rrc.recipe_id + "'");
    }
    add_routing(out, rrc, recipe->second, registry, taxonomy);
  }
  add_monitoring(out, links);
  normalise(out);
  return out;
}

}  // namespace iotafd::choreo
