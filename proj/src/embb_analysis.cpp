#include "slicesim/embb_analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "slicesim/numerics.hpp"

namespace slicesim {

double threshold_snr(int antennas, double eps, double gain) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("threshold_snr: eps must lie in (0, 1)");
  }
  return gain * inv_reg_lower_gamma(antennas, eps);
}

double activation_probability(int antennas, double threshold, double gain) {
  return reg_upper_gamma(antennas, threshold / gain);
}

double target_snr(int antennas, double threshold, double gain) {
  if (antennas < 1) {
    throw std::domain_error("target_snr: antenna count must be >= 1");
  }
  const double x = threshold / gain;
  if (antennas == 1 && x == 0.0) {
    throw std::domain_error("target_snr: single antenna with zero threshold has unbounded average power");
  }
  // (L-1)!/Γ(L-1, x) = (L-1)/Q(L-1, x) for L >= 2, avoiding factorial overflow.
  if (antennas == 1) {
    return gain / exp_integral_e1(x);
  }
  return gain * (antennas - 1) / reg_upper_gamma(antennas - 1, x);
}

double power_inversion(double snr, double threshold, double target) {
  if (snr < threshold) {
    return 0.0;
  }
  if (snr == 0.0) {
    throw std::domain_error("power_inversion: zero SNR at a zero threshold");
  }
  return target / snr;
}

double outage_rate(double target) { return std::log2(1.0 + target); }

EmbbOperatingPoint embb_operating_point(int antennas, double eps, double gain) {
  EmbbOperatingPoint op;
  op.threshold_snr = threshold_snr(antennas, eps, gain);
  op.activation_prob = activation_probability(antennas, op.threshold_snr, gain);
  op.target_snr = target_snr(antennas, op.threshold_snr, gain);
  op.outage_rate = outage_rate(op.target_snr);
  return op;
}

EmbbOperatingPoint embb_operating_point(const SystemConfig& cfg) {
  return embb_operating_point(cfg.antennas, cfg.embb_eps, cfg.embb_gain);
}

}  // namespace slicesim
