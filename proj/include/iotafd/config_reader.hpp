#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "iotafd/error.hpp"

namespace iotafd {

// A view of one JSON object that remembers where it sits in the document, so
// every ConfigError names the full field path ("detectors[1].config.alpha").
class ConfigNode {
 public:
  ConfigNode(const nlohmann::json& value, std::string path);

  const std::string& path() const noexcept { return path_; }
  const nlohmann::json& json() const noexcept { return value_; }
  bool has(std::string_view key) const { return value_.contains(key); }

  std::string field(std::string_view key) const;
  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

  // Accessors throw ConfigError on a missing required key or a type mismatch.
  ConfigNode object(std::string_view key) const;
  std::optional<ConfigNode> optional_object(std::string_view key) const;
  // Each element of an array member, with "[i]" in its path.
  std::size_t array_size(std::string_view key) const;
  ConfigNode element(std::string_view key, std::size_t index) const;

  double number(std::string_view key) const;
  double number(std::string_view key, double fallback) const;
  // Accepts a number or the string "inf".
  double extended_number(std::string_view key, double fallback) const;
  std::uint64_t unsigned_integer(std::string_view key) const;
  std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) const;
  bool boolean(std::string_view key, bool fallback) const;
  std::string string(std::string_view key) const;
  std::string string(std::string_view key, const std::string& fallback) const;

 private:
  const nlohmann::json& member(std::string_view key) const;

  const nlohmann::json& value_;
  std::string path_;
};

// Parses a JSON document, reporting syntax errors as ConfigError on `origin`.
nlohmann::json parse_config_text(std::string_view text, const std::string& origin);
nlohmann::json load_config_file(const std::string& path);

}  // namespace iotafd
