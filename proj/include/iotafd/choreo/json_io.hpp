#pragma once

#include <json.hpp>

#include "iotafd/choreo/discovery.hpp"
#include "iotafd/choreo/indes.hpp"
#include "iotafd/choreo/monitoring.hpp"
#include "iotafd/config_reader.hpp"

// Documents for taxonomies, recipes, offerings, OSRs and RRCs. Readers take a
// ConfigNode so errors name the offending field; writers produce the same
// shapes.
namespace iotafd::choreo {

// A complete choreography setup: the documents a controller starts from.
struct Choreography {
  CategoryTaxonomy taxonomy;
  std::map<std::string, Recipe> recipes;
  Registry registry;
  std::map<std::string, Rrc> rrcs;
};

// Reads {"taxonomy", "recipes", "offerings", "rrcs"}. Offerings must have
// known categories and unique ids; RRCs must reference known recipes and
// ingredients. RRCs are returned uninstantiated.
Choreography read_choreography(const ConfigNode& node);

CategoryTaxonomy read_taxonomy(const ConfigNode& node);
Recipe read_recipe(const ConfigNode& node);
Offering read_offering(const ConfigNode& node);
OsrExpr read_osr_expr(const nlohmann::json& j, const std::string& path);
OfferingSelectionRule read_osr(const ConfigNode& node);
Rrc read_rrc(const ConfigNode& node);

void to_json(nlohmann::json& j, const CategoryTaxonomy& t);
void to_json(nlohmann::json& j, const Port& p);
void to_json(nlohmann::json& j, const Ingredient& i);
void to_json(nlohmann::json& j, const Recipe& r);
void to_json(nlohmann::json& j, const PropertyValue& v);
void to_json(nlohmann::json& j, const Offering& o);
void to_json(nlohmann::json& j, const OsrExpr& e);
void to_json(nlohmann::json& j, const OfferingSelectionRule& o);
void to_json(nlohmann::json& j, const Rrc& r);
void to_json(nlohmann::json& j, const MonitoringLink& l);
void to_json(nlohmann::json& j, const InputBinding& b);
void to_json(nlohmann::json& j, const OutputTarget& t);
void to_json(nlohmann::json& j, const MonitoringEntry& m);
void to_json(nlohmann::json& j, const InteractionDescriptor& d);

// Inverse of to_json for descriptors, used when an engine receives one.
InteractionDescriptor read_descriptor(const nlohmann::json& j);

}  // namespace iotafd::choreo
