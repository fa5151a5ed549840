#pragma once

#include "slicesim/channel.hpp"

namespace slicesim {

// Closed-form eMBB quantities for the interference-free case. The eMBB device
// uses truncated channel inversion: it transmits with power target/snr when
// its MRC SNR is at least the threshold and stays silent otherwise.

struct EmbbOperatingPoint {
  double threshold_snr = 0.0;   // below this the device does not transmit
  double target_snr = 0.0;      // received SNR whenever it transmits
  double activation_prob = 1.0;
  double outage_rate = 0.0;     // bits/s/Hz, log2(1 + target_snr)
};

// Threshold giving Pr{snr < threshold} = eps for snr ~ gain * Gamma(L, 1).
double threshold_snr(int antennas, double eps, double gain);

// Pr{snr >= threshold} = Q(L, threshold / gain).
double activation_probability(int antennas, double threshold, double gain);

// Largest target SNR meeting a unit average transmit power:
// gain (L-1)! / Γ(L-1, threshold/gain). For L = 1 this is gain / E1(threshold/gain)
// and a zero threshold is rejected (std::domain_error).
double target_snr(int antennas, double threshold, double gain);

// Transmit power target/snr when snr >= threshold (inclusive), else 0.
double power_inversion(double snr, double threshold, double target);

double outage_rate(double target);

EmbbOperatingPoint embb_operating_point(int antennas, double eps, double gain);
EmbbOperatingPoint embb_operating_point(const SystemConfig& cfg);

}  // namespace slicesim
