// slicesim: eMBB/mMTC uplink slicing experiments.
//
//   slicesim <command> [--config FILE] [--preset fig3|fig5] [--seed N]
//            [--trials N] [--workers N] [--out PATH]
//
// Exit status: 0 success, 2 configuration error, 1 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "slicesim/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 1;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink eMBB/mMTC slicing simulator (orthogonal and NOMA with MRC-SIC)"};

  std::string command_text;
  std::string config_path;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  unsigned workers = 0;
  std::string out_path;

  app.add_option("command", command_text, "embb-analytic | outage | region | max-devices")
      ->required()
      ->check(CLI::IsMember({"embb-analytic", "outage", "region", "max-devices"}));
  app.add_option("--config", config_path, "key = value scenario file");
  app.add_option("--preset", preset_name, "named parameter set")->check(CLI::IsMember({"fig3", "fig5"}));
  app.add_option("--seed", seed, "base seed for the channel streams");
  app.add_option("--trials", trials, "Monte Carlo trials per estimate");
  app.add_option("--workers", workers, "worker threads (0: all cores); never changes results");
  app.add_option("--out", out_path, "also write the CSV to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  slicesim::Command command;
  slicesim::ExperimentSpec spec;
  try {
    command = slicesim::parse_command(command_text);
    if (!preset_name.empty()) {
      spec = slicesim::preset(preset_name);
    }
    if (!config_path.empty()) {
      spec = slicesim::load_config_file(config_path, spec);
    }
    if (seed) {
      spec.scenario.seed = *seed;
    }
    if (trials) {
      spec.trials = *trials;
    }
    if (!out_path.empty()) {
      spec.output = out_path;
    }
    slicesim::validate(spec);
  } catch (const slicesim::ConfigError& e) {
    std::cerr << "slicesim: config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    const std::string csv = slicesim::run_command(command, spec, {.workers = workers});
    std::cout << csv;
    if (!spec.output.empty()) {
      std::ofstream file(spec.output, std::ios::binary);
      file << csv;
      if (!file) {
        std::cerr << "slicesim: cannot write '" << spec.output << "'\n";
        return kRuntimeError;
      }
    }
  } catch (const slicesim::ConfigError& e) {
    std::cerr << "slicesim: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "slicesim: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
