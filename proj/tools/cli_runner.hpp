#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace iotafd::cli {

enum class Mode { benchmark, scenario };

struct RunConfig {
  Mode mode = Mode::benchmark;
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;  // overrides the document's seed
  bool check_assertions = true;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kAssertionFailed = 1;
inline constexpr int kBadConfig = 2;
inline constexpr int kIoError = 3;

// Benchmark: qos_<detector>.csv per detector plus benchmark_meta.json.
// Scenario: events.jsonl plus controller_state.json.
// Every file is written to a temporary name and renamed into place.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Writes `content` to `path` via write-then-rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace iotafd::cli
