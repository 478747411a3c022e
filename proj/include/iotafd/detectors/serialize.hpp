#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "iotafd/config_reader.hpp"
#include "iotafd/detectors/adaptive.hpp"
#include "iotafd/detectors/iota.hpp"
#include "iotafd/detectors/phi.hpp"

// JSON documents (field names as in the state types; 128-bit sums as decimal
// strings) for fixtures, and a fixed-width little-endian checkpoint encoding
// whose length reflects what a state actually stores.
namespace iotafd::detectors {

void to_json(nlohmann::json& j, const DetectorConfig& c);
void from_json(const nlohmann::json& j, DetectorConfig& c);
void to_json(nlohmann::json& j, const HeartbeatSample& hb);
void from_json(const nlohmann::json& j, HeartbeatSample& hb);
void to_json(nlohmann::json& j, const IotaDetectorState& s);
void from_json(const nlohmann::json& j, IotaDetectorState& s);
void to_json(nlohmann::json& j, const PhiDetectorState& s);
void from_json(const nlohmann::json& j, PhiDetectorState& s);
void to_json(nlohmann::json& j, const AdaptiveDetectorState& s);
void from_json(const nlohmann::json& j, AdaptiveDetectorState& s);

// Like from_json, but each invalid field is reported by its path.
DetectorConfig detector_config_from(const ConfigNode& node);

std::vector<std::uint8_t> checkpoint_bytes(const IotaDetectorState& s);
std::vector<std::uint8_t> checkpoint_bytes(const PhiDetectorState& s);
std::vector<std::uint8_t> checkpoint_bytes(const AdaptiveDetectorState& s);

std::string accumulator_to_string(Accumulator v);
Accumulator accumulator_from_string(const std::string& s);

}  // namespace iotafd::detectors
