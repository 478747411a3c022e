#include "iotafd/choreo/json_io.hpp"

#include "iotafd/detectors/serialize.hpp"
#include "iotafd/error.hpp"

namespace iotafd::choreo {
namespace {

using nlohmann::json;

constexpr std::pair<OsrExpr::Op, const char*> kOpNames[] = {
    {OsrExpr::Op::always, "always"}, {OsrExpr::Op::all_of, "and"}, {OsrExpr::Op::any_of, "or"},
    {OsrExpr::Op::negate, "not"},    {OsrExpr::Op::eq, "eq"},      {OsrExpr::Op::ne, "ne"},
    {OsrExpr::Op::lt, "lt"},         {OsrExpr::Op::le, "le"},      {OsrExpr::Op::gt, "gt"},
    {OsrExpr::Op::ge, "ge"}};

std::vector<Port> read_ports(const ConfigNode& node, std::string_view key) {
  std::vector<Port> ports;
  if (!node.has(key)) return ports;
  for (std::size_t i = 0; i < node.array_size(key); ++i) {
    const ConfigNode p = node.element(key, i);
    ports.push_back({p.string("name"), p.string("type")});
  }
  return ports;
}

std::vector<std::string> read_strings(const ConfigNode& node, std::string_view key) {
  std::vector<std::string> out;
  if (!node.has(key)) return out;
  const json& arr = node.json().at(key);
  if (!arr.is_array()) node.fail(key, "expected an array of strings");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) node.fail(std::string(key) + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::optional<PropertyValue> property_value(const json& v) {
  if (v.is_boolean()) return PropertyValue{v.get<bool>()};
  if (v.is_number()) return PropertyValue{v.get<double>()};
  if (v.is_string()) return PropertyValue{v.get<std::string>()};
  return std::nullopt;
}

Endpoint read_endpoint(const ConfigNode& node) { return {node.string("ingredient"), node.string("port")}; }

}  // namespace

CategoryTaxonomy read_taxonomy(const ConfigNode& node) {
  CategoryTaxonomy t;
  for (std::size_t i = 0; i < node.array_size("categories"); ++i) {
    const ConfigNode c = node.element("categories", i);
    try {
      t.add_category(c.string("name"), read_strings(c, "parents"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      c.fail("name", e.what());
    }
  }
  return t;
}

Recipe read_recipe(const ConfigNode& node) {
  Recipe r;
  r.id = node.string("id");
  for (std::size_t i = 0; i < node.array_size("ingredients"); ++i) {
    const ConfigNode n = node.element("ingredients", i);
    r.ingredients.push_back({n.string("id"), n.string("category"), read_ports(n, "inputs"), read_ports(n, "outputs"),
                             read_strings(n, "non_functional_keys")});
  }
  if (node.has("interactions")) {
    for (std::size_t i = 0; i < node.array_size("interactions"); ++i) {
      const ConfigNode n = node.element("interactions", i);
      r.interactions.push_back({read_endpoint(n.object("from")), read_endpoint(n.object("to"))});
    }
  }
  try {
    r.validate();
  } catch (const Error& e) {
    node.fail("interactions", e.what());
  }
  return r;
}

Offering read_offering(const ConfigNode& node) {
  Offering o;
  o.id = node.string("id");
  o.category = node.string("category");
  o.inputs = read_ports(node, "inputs");
  o.outputs = read_ports(node, "outputs");
  if (node.has("properties")) {
    const ConfigNode props = node.object("properties");
    for (const auto& [key, value] : props.json().items()) {
      auto v = property_value(value);
      if (!v) props.fail(key, "expected a boolean, number or string");
      o.properties.emplace(key, std::move(*v));
    }
  }
  return o;
}

OsrExpr read_osr_expr(const json& j, const std::string& path) {
  auto fail = [&](const std::string& msg) -> OsrExpr { throw ConfigError(path, msg); };
  if (!j.is_object() || j.size() != 1) return fail("expected an object with exactly one operator");
  const auto& [name, arg] = *j.items().begin();
  const std::string sub = path + "." + name;
  for (const auto& [op, op_name] : kOpNames) {
    if (name != op_name) continue;
    switch (op) {
      case OsrExpr::Op::always:
        if (!arg.is_boolean() || !arg.get<bool>()) throw ConfigError(sub, "expected true");
        return OsrExpr{};
      case OsrExpr::Op::all_of:
      case OsrExpr::Op::any_of: {
        if (!arg.is_array()) throw ConfigError(sub, "expected an array of expressions");
        std::vector<OsrExpr> children;
        for (std::size_t i = 0; i < arg.size(); ++i) {
          children.push_back(read_osr_expr(arg[i], sub + "[" + std::to_string(i) + "]"));
        }
        return op == OsrExpr::Op::all_of ? OsrExpr::all(std::move(children)) : OsrExpr::any(std::move(children));
      }
      case OsrExpr::Op::negate:
        return OsrExpr::negation(read_osr_expr(arg, sub));
      default: {
        if (!arg.is_array() || arg.size() != 2 || !arg[0].is_string()) {
          throw ConfigError(sub, "expected [key, value]");
        }
        auto v = property_value(arg[1]);
        if (!v) throw ConfigError(sub + "[1]", "expected a boolean, number or string");
        return OsrExpr::compare(op, arg[0].get<std::string>(), std::move(*v));
      }
    }
  }
  return fail("unknown operator '" + name + "'");
}

OfferingSelectionRule read_osr(const ConfigNode& node) {
  OfferingSelectionRule osr;
  if (node.has("rule")) osr.expr = read_osr_expr(node.json().at("rule"), node.field("rule"));
  if (const auto c = node.optional_object("cardinality")) {
    osr.cardinality.min = c->unsigned_integer("min", 1);
    osr.cardinality.max = c->unsigned_integer("max", osr.cardinality.min);
    if (osr.cardinality.min > osr.cardinality.max) c->fail("min", "exceeds max");
  }
  return osr;
}

Rrc read_rrc(const ConfigNode& node) {
  Rrc r;
  r.id = node.string("id");
  r.recipe_id = node.string("recipe");
  if (const auto osrs = node.optional_object("osrs")) {
    for (const auto& [ingredient, value] : osrs->json().items()) {
      r.osrs.emplace(ingredient, read_osr(ConfigNode(value, osrs->field(ingredient))));
    }
  }
  if (const auto d = node.optional_object("detector")) {
    try {
      r.detector_kind = detectors::parse_detector_kind(d->string("kind", "iota"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      d->fail("kind", e.what());
    }
    if (const auto c = d->optional_object("config")) r.detector_config = detectors::detector_config_from(*c);
  }
  return r;
}

Choreography read_choreography(const ConfigNode& node) {
  Choreography c;
  c.taxonomy = read_taxonomy(node.object("taxonomy"));
  for (std::size_t i = 0; i < node.array_size("recipes"); ++i) {
    const ConfigNode n = node.element("recipes", i);
    Recipe r = read_recipe(n);
    if (!c.recipes.emplace(r.id, r).second) n.fail("id", "duplicate recipe '" + r.id + "'");
  }
  if (node.has("offerings")) {
    for (std::size_t i = 0; i < node.array_size("offerings"); ++i) {
      const ConfigNode n = node.element("offerings", i);
      Offering o = read_offering(n);
      try {
        validate_offering(o, c.taxonomy);
      } catch (const Error& e) {
        n.fail("category", e.what());
      }
      if (!c.registry.emplace(o.id, o).second) n.fail("id", "duplicate offering '" + o.id + "'");
    }
  }
  if (node.has("rrcs")) {
    for (std::size_t i = 0; i < node.array_size("rrcs"); ++i) {
      const ConfigNode n = node.element("rrcs", i);
      Rrc r = read_rrc(n);
      const auto recipe = c.recipes.find(r.recipe_id);
      if (recipe == c.recipes.end()) n.fail("recipe", "unknown recipe '" + r.recipe_id + "'");
      for (const auto& [ingredient, osr] : r.osrs) {
        const Ingredient* ing = recipe->second.ingredient(ingredient);
        if (ing == nullptr) n.fail("osrs." + ingredient, "recipe has no such ingredient");
        try {
          osr.validate(*ing);
        } catch (const Error& e) {
          n.fail("osrs." + ingredient, e.what());
        }
      }
      if (!c.rrcs.emplace(r.id, r).second) n.fail("id", "duplicate RRC '" + r.id + "'");
    }
  }
  return c;
}

void to_json(json& j, const CategoryTaxonomy& t) {
  j = json{{"categories", json::array()}};
  for (const auto& [name, parents] : t.categories()) {
    j["categories"].push_back({{"name", name}, {"parents", parents}});
  }
}

void to_json(json& j, const Port& p) { j = json{{"name", p.name}, {"type", p.type}}; }

void to_json(json& j, const Ingredient& i) {
  j = json{{"id", i.id}, {"category", i.category}, {"inputs", i.inputs}, {"outputs", i.outputs}};
  if (!i.non_functional_keys.empty()) j["non_functional_keys"] = i.non_functional_keys;
}

void to_json(json& j, const Recipe& r) {
  j = json{{"id", r.id}, {"ingredients", r.ingredients}, {"interactions", json::array()}};
  for (const Interaction& x : r.interactions) {
    j["interactions"].push_back({{"from", {{"ingredient", x.from.node}, {"port", x.from.port}}},
                                 {"to", {{"ingredient", x.to.node}, {"port", x.to.port}}}});
  }
}

void to_json(json& j, const PropertyValue& v) {
  std::visit([&](const auto& x) { j = x; }, v);
}

void to_json(json& j, const Offering& o) {
  j = json{{"id", o.id}, {"category", o.category}, {"inputs", o.inputs}, {"outputs", o.outputs},
           {"properties", json::object()}};
  for (const auto& [k, v] : o.properties) to_json(j["properties"][k], v);
}

void to_json(json& j, const OsrExpr& e) {
  const char* name = "always";
  for (const auto& [op, op_name] : kOpNames) {
    if (op == e.op) name = op_name;
  }
  switch (e.op) {
    case OsrExpr::Op::always:
      j = json{{name, true}};
      return;
    case OsrExpr::Op::all_of:
    case OsrExpr::Op::any_of:
      j = json{{name, e.children}};
      return;
    case OsrExpr::Op::negate:
      j = json{{name, e.children.at(0)}};
      return;
    default: {
      json v;
      to_json(v, e.value);
      j = json{{name, json::array({e.key, v})}};
    }
  }
}

void to_json(json& j, const OfferingSelectionRule& o) {
  j = json{{"rule", o.expr}, {"cardinality", {{"min", o.cardinality.min}, {"max", o.cardinality.max}}}};
}

void to_json(json& j, const Rrc& r) {
  j = json{{"id", r.id},
           {"recipe", r.recipe_id},
           {"status", std::string(to_string(r.status))},
           {"osrs", json::object()},
           {"assignment", json::object()},
           {"detector", {{"kind", std::string(detectors::to_string(r.detector_kind))}, {"config", r.detector_config}}}};
  for (const auto& [k, v] : r.osrs) j["osrs"][k] = v;
  for (const auto& [k, v] : r.assignment) j["assignment"][k] = v;
}

void to_json(json& j, const MonitoringLink& l) {
  j = json{{"monitor", l.monitor}, {"monitored", l.monitored}, {"rrc", l.rrc},
           {"kind", std::string(detectors::to_string(l.kind))}, {"config", l.config}};
}

void to_json(json& j, const InputBinding& b) {
  j = json{{"port", b.port}, {"source", {{"offering", b.source.node}, {"port", b.source.port}}}, {"rrc", b.rrc}};
}

void to_json(json& j, const OutputTarget& t) {
  j = json{{"port", t.port}, {"target", {{"offering", t.target.node}, {"port", t.target.port}}}, {"rrc", t.rrc}};
}

void to_json(json& j, const MonitoringEntry& m) {
  j = json{{"monitored", m.monitored}, {"rrc", m.rrc}, {"kind", std::string(detectors::to_string(m.kind))},
           {"config", m.config}};
}

void to_json(json& j, const InteractionDescriptor& d) {
  j = json{{"offering", d.offering}, {"category", d.category},   {"inputs", d.inputs},
           {"outputs", d.outputs},   {"monitoring", d.monitoring}, {"heartbeat_targets", d.heartbeat_targets}};
}

InteractionDescriptor read_descriptor(const json& j) {
  auto endpoint = [](const json& e) { return Endpoint{e.at("offering").get<std::string>(), e.at("port").get<std::string>()}; };
  InteractionDescriptor d;
  d.offering = j.at("offering").get<std::string>();
  d.category = j.at("category").get<std::string>();
  for (const json& b : j.at("inputs")) {
    d.inputs.push_back({b.at("port").get<std::string>(), endpoint(b.at("source")), b.at("rrc").get<std::string>()});
  }
  for (const json& t : j.at("outputs")) {
    d.outputs.push_back({t.at("port").get<std::string>(), endpoint(t.at("target")), t.at("rrc").get<std::string>()});
  }
  for (const json& m : j.at("monitoring")) {
    d.monitoring.push_back({m.at("monitored").get<std::string>(), m.at("rrc").get<std::string>(),
                            detectors::parse_detector_kind(m.at("kind").get<std::string>()),
                            m.at("config").get<detectors::DetectorConfig>()});
  }
  d.heartbeat_targets = j.at("heartbeat_targets").get<std::vector<std::string>>();
  return d;
}

}  // namespace iotafd::choreo
