#include "slicesim/experiment.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "slicesim/embb_analysis.hpp"

namespace slicesim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw ConfigError(std::string(key), "cannot parse '" + std::string(value) + "' as a number");
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(parse_number<int>(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) {
      break;
    }
    value = value.substr(comma + 1);
  }
  return out;
}

ModeSelection parse_mode(std::string_view value) {
  if (value == "orth") return ModeSelection::orth;
  if (value == "nonorth") return ModeSelection::nonorth;
  if (value == "both") return ModeSelection::both;
  throw ConfigError("mode", "expected orth, nonorth or both, got '" + std::string(value) + "'");
}

std::string_view mode_name(ModeSelection m) {
  switch (m) {
    case ModeSelection::orth: return "orth";
    case ModeSelection::nonorth: return "nonorth";
    case ModeSelection::both: return "both";
  }
  return "both";
}

std::string_view slicing_name(SlicingMode m) { return m == SlicingMode::orthogonal ? "orth" : "nonorth"; }

bool wants(ModeSelection sel, SlicingMode m) {
  return sel == ModeSelection::both || (sel == ModeSelection::orth) == (m == SlicingMode::orthogonal);
}

std::string fmt_rate(double v) { return fmt::format("{:.6f}", v); }
std::string fmt_prob(double v) { return fmt::format("{:.8f}", v); }
std::string fmt_real(double v) { return fmt::format("{:.10g}", v); }

SystemConfig scenario_for(const ExperimentSpec& spec, int antennas, Command command) {
  SystemConfig cfg = spec.scenario;
  cfg.antennas = antennas;
  cfg.trials = effective_trials(spec, command);
  return cfg;
}

std::vector<double> embb_rate_grid(int points, double outage_rate) {
  std::vector<double> grid = uniform_grid(0.0, 1.0, points);
  for (double& r : grid) {
    r *= outage_rate;
  }
  return grid;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "embb-analytic") return Command::embb_analytic;
  if (name == "outage") return Command::outage;
  if (name == "region") return Command::region;
  if (name == "max-devices") return Command::max_devices;
  throw ConfigError("command", "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::embb_analytic: return "embb-analytic";
    case Command::outage: return "outage";
    case Command::region: return "region";
    case Command::max_devices: return "max-devices";
  }
  return "region";
}

ExperimentSpec parse_config(std::string_view text, ExperimentSpec base) {
  ExperimentSpec spec = std::move(base);
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_no;

    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}", line_no), "expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError(key, "given more than once");
    }

    if (key == "L") {
      spec.antenna_counts = parse_int_list(key, value);
      spec.scenario.antennas = spec.antenna_counts.front();
    } else if (key == "M") {
      spec.scenario.devices = parse_number<int>(key, value);
    } else if (key == "gamma_B") {
      spec.scenario.embb_gain = parse_number<double>(key, value);
    } else if (key == "gamma_B_db") {
      spec.scenario.embb_gain = db_to_linear(parse_number<double>(key, value));
    } else if (key == "gamma_M") {
      spec.scenario.mtc_gain = parse_number<double>(key, value);
    } else if (key == "gamma_M_db") {
      spec.scenario.mtc_gain = db_to_linear(parse_number<double>(key, value));
    } else if (key == "eps_B") {
      spec.scenario.embb_eps = parse_number<double>(key, value);
    } else if (key == "eps_M") {
      spec.scenario.mtc_eps = parse_number<double>(key, value);
    } else if (key == "P_M") {
      spec.scenario.mtc_power = parse_number<double>(key, value);
    } else if (key == "trials") {
      spec.trials = parse_number<std::uint64_t>(key, value);
    } else if (key == "seed") {
      spec.scenario.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "mode") {
      spec.mode = parse_mode(value);
    } else if (key == "alpha_points") {
      spec.alpha_points = parse_number<int>(key, value);
    } else if (key == "r_b_points") {
      spec.r_b_points = parse_number<int>(key, value);
    } else if (key == "r_M") {
      spec.mtc_rate = parse_number<double>(key, value);
    } else if (key == "r_B") {
      spec.embb_rate = parse_number<double>(key, value);
    } else if (key == "gamma_tar") {
      spec.target_snr = parse_number<double>(key, value);
    } else if (key == "out") {
      spec.output = std::string(value);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  for (const char* gain : {"gamma_B", "gamma_M"}) {
    if (seen.contains(gain) && seen.contains(std::string(gain) + "_db")) {
      throw ConfigError(gain, "give either the linear or the _db form, not both");
    }
  }
  validate(spec);
  return spec;
}

ExperimentSpec load_config_file(const std::string& path, ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config", "cannot open '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string serialize_config(const ExperimentSpec& spec) {
  std::string out;
  std::string antennas;
  for (std::size_t i = 0; i < spec.antenna_counts.size(); ++i) {
    antennas += (i ? ", " : "") + std::to_string(spec.antenna_counts[i]);
  }
  const SystemConfig& s = spec.scenario;
  out += fmt::format("L = {}\n", antennas);
  out += fmt::format("M = {}\n", s.devices);
  out += fmt::format("gamma_B = {:.17g}\n", s.embb_gain);
  out += fmt::format("gamma_M = {:.17g}\n", s.mtc_gain);
  out += fmt::format("eps_B = {:.17g}\n", s.embb_eps);
  out += fmt::format("eps_M = {:.17g}\n", s.mtc_eps);
  out += fmt::format("P_M = {:.17g}\n", s.mtc_power);
  out += fmt::format("seed = {}\n", s.seed);
  if (spec.trials) {
    out += fmt::format("trials = {}\n", *spec.trials);
  }
  out += fmt::format("mode = {}\n", mode_name(spec.mode));
  out += fmt::format("alpha_points = {}\n", spec.alpha_points);
  out += fmt::format("r_b_points = {}\n", spec.r_b_points);
  out += fmt::format("r_M = {:.17g}\n", spec.mtc_rate);
  out += fmt::format("r_B = {:.17g}\n", spec.embb_rate);
  if (spec.target_snr) {
    out += fmt::format("gamma_tar = {:.17g}\n", *spec.target_snr);
  }
  if (!spec.output.empty()) {
    out += fmt::format("out = {}\n", spec.output);
  }
  return out;
}

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec spec;
  spec.scenario.embb_gain = db_to_linear(20.0);
  spec.scenario.mtc_gain = db_to_linear(5.0);
  spec.scenario.embb_eps = 1e-3;
  spec.scenario.mtc_eps = 1e-1;
  spec.scenario.mtc_power = 1.0;
  spec.antenna_counts = {1, 2, 4, 8, 16};
  spec.scenario.antennas = 1;
  spec.mode = ModeSelection::both;
  if (name == "fig3") {
    spec.scenario.devices = 10;
    spec.alpha_points = 41;
    spec.r_b_points = 41;
  } else if (name == "fig5") {
    spec.mtc_rate = 0.25;
    spec.r_b_points = 21;
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
  return spec;
}

void validate(const ExperimentSpec& spec) {
  if (spec.antenna_counts.empty()) {
    throw ConfigError("L", "need at least one antenna count");
  }
  for (int l : spec.antenna_counts) {
    SystemConfig cfg = spec.scenario;
    cfg.antennas = l;
    cfg.validate();
  }
  if (spec.alpha_points < 1) {
    throw ConfigError("alpha_points", "time-share grid must have at least one point");
  }
  if (spec.r_b_points < 1) {
    throw ConfigError("r_b_points", "eMBB rate grid must have at least one point");
  }
  if (!(spec.mtc_rate >= 0.0)) {
    throw ConfigError("r_M", "rate must be nonnegative");
  }
  if (!(spec.embb_rate >= 0.0)) {
    throw ConfigError("r_B", "rate must be nonnegative");
  }
  if (spec.target_snr && !(*spec.target_snr > 0.0)) {
    throw ConfigError("gamma_tar", "target SNR must be positive");
  }
  if (spec.trials && *spec.trials == 0) {
    throw ConfigError("trials", "trial count must be positive");
  }
}

std::uint64_t effective_trials(const ExperimentSpec& spec, Command command) {
  if (spec.trials) {
    return *spec.trials;
  }
  const bool embb_simulated = command != Command::embb_analytic && spec.mode != ModeSelection::orth;
  return embb_simulated ? 100000 : 10000;
}

std::string run_embb_analytic(const ExperimentSpec& spec) {
  validate(spec);
  std::string out = "L,gamma_min,gamma_tar,a_B,r_B_out\n";
  for (int l : spec.antenna_counts) {
    const EmbbOperatingPoint op = embb_operating_point(l, spec.scenario.embb_eps, spec.scenario.embb_gain);
    out += fmt::format("{},{},{},{},{}\n", l, fmt_real(op.threshold_snr), fmt_real(op.target_snr),
                       fmt_prob(op.activation_prob), fmt_rate(op.outage_rate));
  }
  return out;
}

std::string run_outage(const ExperimentSpec& spec, RunOptions run) {
  validate(spec);
  std::string out = "mode,L,M,r_M,r_B,gamma_tar,eps_M_hat,halfwidth_M,eps_B_hat,halfwidth_B\n";
  for (int l : spec.antenna_counts) {
    const SystemConfig cfg = scenario_for(spec, l, Command::outage);
    const EmbbOperatingPoint op = embb_operating_point(cfg);
    const TrialSet set(cfg, run);
    auto row = [&](SlicingMode m, double target, const OutageEstimate& mtc, const OutageEstimate& embb) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", slicing_name(m), l, cfg.devices, fmt_rate(spec.mtc_rate),
                         fmt_rate(spec.embb_rate), fmt_real(target), fmt_prob(mtc.p_hat),
                         fmt_prob(mtc.half_width_95), fmt_prob(embb.p_hat), fmt_prob(embb.half_width_95));
    };
    if (wants(spec.mode, SlicingMode::orthogonal)) {
      row(SlicingMode::orthogonal, op.target_snr, estimate_mmtc_outage_orth(set, spec.mtc_rate),
          estimate_embb_outage_orth(cfg, op.threshold_snr, run));
    }
    if (wants(spec.mode, SlicingMode::non_orthogonal)) {
      const double target = spec.target_snr.value_or(op.target_snr);
      const JointOutage joint = estimate_joint_outage_nonorth(set, spec.mtc_rate, spec.embb_rate, target);
      row(SlicingMode::non_orthogonal, target, joint.mtc, joint.embb);
    }
  }
  return out;
}

std::string run_region(const ExperimentSpec& spec, RunOptions run, const SearchOptions& search) {
  validate(spec);
  std::string out = "mode,L,M,alpha,gamma_tar,r_B,r_M,eps_B_hat,eps_M_hat,halfwidth_B,halfwidth_M\n";
  for (int l : spec.antenna_counts) {
    const SystemConfig cfg = scenario_for(spec, l, Command::region);
    const EmbbOperatingPoint op = embb_operating_point(cfg);
    const TrialSet set(cfg, run);

    std::vector<RatePoint> points;
    if (wants(spec.mode, SlicingMode::orthogonal)) {
      const auto alphas = uniform_grid(0.0, 1.0, spec.alpha_points);
      points = orthogonal_region(set, alphas, search);
    }
    if (wants(spec.mode, SlicingMode::non_orthogonal)) {
      const auto rates = embb_rate_grid(spec.r_b_points, op.outage_rate);
      const auto nonorth = nonorthogonal_region(set, rates, search);
      points.insert(points.end(), nonorth.begin(), nonorth.end());
    }
    for (const RatePoint& p : points) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", slicing_name(p.mode), l, cfg.devices,
                         p.alpha ? fmt_real(*p.alpha) : "", p.target_snr ? fmt_real(*p.target_snr) : "",
                         fmt_rate(p.embb_rate), fmt_rate(p.mtc_rate), fmt_prob(p.embb_outage.p_hat),
                         fmt_prob(p.mtc_outage.p_hat), fmt_prob(p.embb_outage.half_width_95),
                         fmt_prob(p.mtc_outage.half_width_95));
    }
  }
  return out;
}

std::string run_max_devices(const ExperimentSpec& spec, RunOptions run, const SearchOptions& search) {
  validate(spec);
  if (!(spec.mtc_rate > 0.0)) {
    throw ConfigError("r_M", "max-devices needs a positive mMTC rate");
  }
  std::string out = "mode,L,r_B,M_max\n";
  for (int l : spec.antenna_counts) {
    const SystemConfig cfg = scenario_for(spec, l, Command::max_devices);
    const EmbbOperatingPoint op = embb_operating_point(cfg);
    const auto rates = embb_rate_grid(spec.r_b_points, op.outage_rate);
    for (SlicingMode m : {SlicingMode::orthogonal, SlicingMode::non_orthogonal}) {
      if (!wants(spec.mode, m)) {
        continue;
      }
      for (double r : rates) {
        const std::size_t count = max_devices(cfg, spec.mtc_rate, r, m, run, search);
        out += fmt::format("{},{},{},{}\n", slicing_name(m), l, fmt_rate(r), count);
      }
    }
  }
  return out;
}

std::string run_command(Command command, const ExperimentSpec& spec, RunOptions run) {
  switch (command) {
    case Command::embb_analytic: return run_embb_analytic(spec);
    case Command::outage: return run_outage(spec, run);
    case Command::region: return run_region(spec, run);
    case Command::max_devices: return run_max_devices(spec, run);
  }
  return {};
}

}  // namespace slicesim
