#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace slicesim {

// Raised for an invalid scenario parameter; field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Scenario parameters, linear units throughout. Noise power is normalized to
// one and is not a parameter.
struct SystemConfig {
  int antennas = 1;              // L, receive antennas at the base station
  int devices = 10;              // M, connected MTC devices
  double embb_gain = 100.0;      // average eMBB channel gain (20 dB)
  double mtc_gain = 3.1622776601683795;  // average MTC channel gain (5 dB)
  double embb_eps = 1e-3;        // eMBB reliability target
  double mtc_eps = 1e-1;         // mMTC reliability target
  double mtc_power = 1.0;        // MTC transmit power
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;

  // Throws ConfigError naming the first invalid field.
  void validate() const;

  bool operator==(const SystemConfig&) const = default;
};

double db_to_linear(double db);

// One slot's channels: the eMBB vector and the L x M matrix whose column m is
// MTC device m.
struct ChannelRealization {
  Eigen::VectorXcd embb;
  Eigen::MatrixXcd mtc;
};

// Deterministic in (cfg.seed, trial_index). Draw order within the trial's
// stream is the eMBB vector first, then MTC columns by index, so the first k
// columns are shared by every config that differs only in `devices`.
ChannelRealization draw_realization(const SystemConfig& cfg, std::uint64_t trial_index);

// The eMBB vector alone; identical to draw_realization(cfg, t).embb.
Eigen::VectorXcd draw_embb_channel(const SystemConfig& cfg, std::uint64_t trial_index);

}  // namespace slicesim
