#pragma once

#include <stdexcept>
#include <string>

namespace iotafd {

enum class Errc {
  ordering,          // heartbeat timestamps or sequence numbers went backwards
  unavailable,       // not enough data to answer (no heartbeat yet, ...)
  invalid_argument,
  scheduling,        // simulator event scheduled in the past
  taxonomy,          // unknown category
  state,             // operation not allowed in the current state
  routing,           // unbound port
  config,            // malformed configuration document
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Configuration errors carry the document path and the offending field so the
// CLI can name both.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(Errc::config, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace iotafd
