#include "iotafd/config_reader.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace iotafd {

ConfigNode::ConfigNode(const nlohmann::json& value, std::string path) : value_(value), path_(std::move(path)) {
  if (!value_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
}

std::string ConfigNode::field(std::string_view key) const {
  return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void ConfigNode::fail(std::string_view key, const std::string& message) const { throw ConfigError(field(key), message); }

const nlohmann::json& ConfigNode::member(std::string_view key) const {
  const auto it = value_.find(key);
  if (it == value_.end()) fail(key, "missing required field");
  return *it;
}

ConfigNode ConfigNode::object(std::string_view key) const {
  const auto& v = member(key);
  if (!v.is_object()) fail(key, "expected an object");
  return {v, field(key)};
}

std::optional<ConfigNode> ConfigNode::optional_object(std::string_view key) const {
  if (!has(key) || value_.at(key).is_null()) return std::nullopt;
  return object(key);
}

std::size_t ConfigNode::array_size(std::string_view key) const {
  const auto& v = member(key);
  if (!v.is_array()) fail(key, "expected an array");
  return v.size();
}

ConfigNode ConfigNode::element(std::string_view key, std::size_t index) const {
  const auto& v = member(key);
  const std::string path = field(key) + "[" + std::to_string(index) + "]";
  if (!v.is_array() || index >= v.size()) throw ConfigError(path, "no such element");
  if (!v[index].is_object()) throw ConfigError(path, "expected an object");
  return {v[index], path};
}

double ConfigNode::number(std::string_view key) const {
  const auto& v = member(key);
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

double ConfigNode::number(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double ConfigNode::extended_number(std::string_view key, double fallback) const {
  if (!has(key)) return fallback;
  const auto& v = member(key);
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) fail(key, "expected a number or \"inf\"");
  return v.get<double>();
}

std::uint64_t ConfigNode::unsigned_integer(std::string_view key) const {
  const auto& v = member(key);
  if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t ConfigNode::unsigned_integer(std::string_view key, std::uint64_t fallback) const {
  return has(key) ? unsigned_integer(key) : fallback;
}

bool ConfigNode::boolean(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = member(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string ConfigNode::string(std::string_view key) const {
  const auto& v = member(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::string ConfigNode::string(std::string_view key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

nlohmann::json parse_config_text(std::string_view text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin, std::string("not valid JSON: ") + e.what());
  }
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace iotafd
