#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli_runner.hpp"

int main(int argc, char** argv) {
  using iotafd::cli::Mode;
  CLI::App app{"Failure-detector QoS benchmarks and choreography scenarios"};
  iotafd::cli::RunConfig config;
  std::uint64_t seed = 0;
  bool check = true;

  const std::map<std::string, Mode> modes{{"benchmark", Mode::benchmark}, {"scenario", Mode::scenario}};
  app.add_option("--mode", config.mode, "benchmark or scenario")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--config", config.config_path, "sweep spec or scenario document")->required();
  app.add_option("--out", config.out_dir, "output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "master seed, overrides the document");
  app.add_flag("--assert,!--no-assert", check, "fail when scenario assertions do not hold")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) config.seed = seed;
  config.check_assertions = check;
  return iotafd::cli::run(config, std::cout, std::cerr);
}
