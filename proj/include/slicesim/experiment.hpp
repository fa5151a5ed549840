#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicesim/channel.hpp"
#include "slicesim/monte_carlo.hpp"
#include "slicesim/slicing_search.hpp"

namespace slicesim {

enum class Command { embb_analytic, outage, region, max_devices };
enum class ModeSelection { orth, nonorth, both };

Command parse_command(std::string_view name);
std::string_view command_name(Command c);

// One experiment: a scenario plus the sweep and output controls. Gains are
// stored linear; a config file may give them in dB with a `_db` key suffix.
struct ExperimentSpec {
  SystemConfig scenario;
  std::vector<int> antenna_counts{1};  // swept; each run sets scenario.antennas
  ModeSelection mode = ModeSelection::both;
  int alpha_points = 41;
  int r_b_points = 41;
  double mtc_rate = 0.25;               // r_M for `outage` and `max-devices`
  double embb_rate = 0.0;               // r_B for `outage`
  std::optional<double> target_snr;     // `outage`, non-orthogonal; defaults to r_B_out's target
  std::optional<std::uint64_t> trials;  // unset: 10^4 mMTC-only, 10^5 when the eMBB target is simulated
  std::string output;

  bool operator==(const ExperimentSpec&) const = default;
};

// Flat `key = value` text, `#` comments. Keys: L (comma list), M, gamma_B |
// gamma_B_db, gamma_M | gamma_M_db, eps_B, eps_M, P_M, trials, seed, mode,
// alpha_points, r_b_points, r_M, r_B, gamma_tar, out. Values override `base`.
// Throws ConfigError naming the offending key.
ExperimentSpec parse_config(std::string_view text, ExperimentSpec base = {});
ExperimentSpec load_config_file(const std::string& path, ExperimentSpec base = {});

// Canonical form: linear gains, every field written. parse_config of the
// result reproduces `spec`.
std::string serialize_config(const ExperimentSpec& spec);

// Named parameter sets: "fig3" (rate regions, M = 10) and "fig5" (device
// counts at r_M = 0.25), both sweeping L over {1, 2, 4, 8, 16}.
ExperimentSpec preset(std::string_view name);

void validate(const ExperimentSpec& spec);

std::uint64_t effective_trials(const ExperimentSpec& spec, Command command);

// Each returns CSV text with a header row. Output depends only on `spec`
// (seed included), never on the worker count.
std::string run_embb_analytic(const ExperimentSpec& spec);
std::string run_outage(const ExperimentSpec& spec, RunOptions run = {});
std::string run_region(const ExperimentSpec& spec, RunOptions run = {}, const SearchOptions& search = {});
std::string run_max_devices(const ExperimentSpec& spec, RunOptions run = {}, const SearchOptions& search = {});

std::string run_command(Command command, const ExperimentSpec& spec, RunOptions run = {});

}  // namespace slicesim
