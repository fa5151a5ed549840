#include "slicesim/channel.hpp"

#include <cmath>

#include "slicesim/rng.hpp"

namespace slicesim {

void SystemConfig::validate() const {
  if (antennas < 1) {
    throw ConfigError("L", "antenna count must be >= 1");
  }
  if (devices < 0) {
    throw ConfigError("M", "device count must be >= 0");
  }
  if (!(embb_gain > 0.0) || !std::isfinite(embb_gain)) {
    throw ConfigError("gamma_B", "average eMBB gain must be positive and finite");
  }
  if (!(mtc_gain > 0.0) || !std::isfinite(mtc_gain)) {
    throw ConfigError("gamma_M", "average MTC gain must be positive and finite");
  }
  if (!(embb_eps > 0.0 && embb_eps < 1.0)) {
    throw ConfigError("eps_B", "reliability target must lie in (0, 1)");
  }
  if (!(mtc_eps > 0.0 && mtc_eps < 1.0)) {
    throw ConfigError("eps_M", "reliability target must lie in (0, 1)");
  }
  if (!(mtc_power > 0.0) || !std::isfinite(mtc_power)) {
    throw ConfigError("P_M", "MTC transmit power must be positive and finite");
  }
  if (trials == 0) {
    throw ConfigError("trials", "trial count must be positive");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

ChannelRealization draw_realization(const SystemConfig& cfg, std::uint64_t trial_index) {
  RngStream rng(cfg.seed, trial_index);
  ChannelRealization out;
  out.embb.resize(cfg.antennas);
  out.mtc.resize(cfg.antennas, cfg.devices);
  const auto length = static_cast<std::size_t>(cfg.antennas);
  fill_complex_gaussian({out.embb.data(), length}, cfg.embb_gain, rng);
  for (int m = 0; m < cfg.devices; ++m) {
    fill_complex_gaussian({out.mtc.col(m).data(), length}, cfg.mtc_gain, rng);
  }
  return out;
}

Eigen::VectorXcd draw_embb_channel(const SystemConfig& cfg, std::uint64_t trial_index) {
  RngStream rng(cfg.seed, trial_index);
  return sample_complex_gaussian_vector(cfg.antennas, cfg.embb_gain, rng);
}

}  // namespace slicesim
