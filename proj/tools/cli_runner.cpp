#include "cli_runner.hpp"

#include <filesystem>
#include <fstream>
#include <system_error>

#include "iotafd/config_reader.hpp"
#include "iotafd/error.hpp"
#include "iotafd/qos/sweep.hpp"
#include "iotafd/runtime/scenario.hpp"

namespace iotafd::cli {
namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string output_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

int run_benchmark(const RunConfig& config, const nlohmann::json& doc, std::ostream& out) {
  qos::SweepSpec spec = qos::parse_sweep_spec(doc);
  if (config.seed) spec.seed = *config.seed;
  const qos::SweepResult result = qos::sweep_thresholds(spec);
  for (const auto& d : spec.detectors) {
    const std::string path = output_path(config, "qos_" + std::string(detectors::to_string(d.kind)) + ".csv");
    write_atomically(path, qos::curve_csv(result.for_detector(d.kind)));
    out << "wrote " << path << "\n";
  }
  const std::string meta = output_path(config, "benchmark_meta.json");
  write_atomically(meta, result.metadata.dump(2) + "\n");
  out << "wrote " << meta << "\n";
  return kOk;
}

int run_scenario(const RunConfig& config, const nlohmann::json& doc, std::ostream& out, std::ostream& err) {
  runtime::Scenario scenario = runtime::read_scenario(ConfigNode(doc, ""));
  if (config.seed) scenario.seed = *config.seed;
  const runtime::ScenarioResult result = runtime::run_scenario(scenario);

  const std::string events = output_path(config, "events.jsonl");
  write_atomically(events, simnet::to_jsonl(result.log));
  nlohmann::json state{{"controller", result.controller_state}, {"engines", nlohmann::json::object()},
                       {"failovers", nlohmann::json::array()}, {"assertion_failures", result.assertion_failures}};
  for (const auto& [id, e] : result.engines) state["engines"][id] = e;
  for (const auto& f : result.failovers) {
    nlohmann::json fj{{"failed", f.failed}, {"crash_time", f.crash_time}, {"was_assigned", f.was_assigned},
                      {"revalidated", f.revalidated}};
    fj["detected_at"] = f.detected_at ? nlohmann::json(*f.detected_at) : nlohmann::json();
    fj["completed_at"] = f.completed_at ? nlohmann::json(*f.completed_at) : nlohmann::json();
    fj["duration"] = f.duration() ? nlohmann::json(*f.duration()) : nlohmann::json();
    state["failovers"].push_back(std::move(fj));
    out << "failover " << f.failed << ": ";
    if (f.duration()) {
      out << *f.duration() << " time units after the crash\n";
    } else {
      out << "not completed\n";
    }
  }
  const std::string dump = output_path(config, "controller_state.json");
  write_atomically(dump, state.dump(2) + "\n");
  out << "wrote " << events << "\nwrote " << dump << "\n";

  if (config.check_assertions && !result.assertion_failures.empty()) {
    for (const auto& f : result.assertion_failures) err << "assertion failed: " << f << "\n";
    return kAssertionFailed;
  }
  return kOk;
}

}  // namespace

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(tmp + ": cannot open for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError(tmp + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(path + ": " + ec.message());
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError(config.out_dir + ": " + ec.message());
    const nlohmann::json doc = load_config_file(config.config_path);
    return config.mode == Mode::benchmark ? run_benchmark(config, doc, out) : run_scenario(config, doc, out, err);
  } catch (const ConfigError& e) {
    if (e.field() == config.config_path) {
      err << "error: " << e.what() << "\n";
    } else {
      err << "error: " << config.config_path << ": " << e.what() << "\n";
    }
    return kBadConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << config.config_path << ": " << e.what() << "\n";
    return kBadConfig;
  }
}

}  // namespace iotafd::cli
