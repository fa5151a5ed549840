#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "slicesim/embb_analysis.hpp"
#include "slicesim/monte_carlo.hpp"

namespace slicesim {

enum class SlicingMode { orthogonal, non_orthogonal };

struct SearchOptions {
  double rate_tolerance = 0.01;        // bits/s/Hz
  double target_rel_tolerance = 0.01;  // relative width of the final target-SNR bracket
  double rate_cap = 64.0;              // upper limit for the mMTC rate bracket
  // Lowest target SNR searched, as a fraction of the power-constrained maximum.
  double target_floor_ratio = 1e-6;
  // Scan target SNRs on a log grid first and fall back to the grid when the
  // eMBB outage is not monotone in it.
  bool validate_monotonicity = false;
  int target_scan_points = 32;
  int device_cap = 4096;
};

struct RatePoint {
  double embb_rate = 0.0;
  double mtc_rate = 0.0;
  SlicingMode mode = SlicingMode::orthogonal;
  std::optional<double> alpha;       // orthogonal only: eMBB time share
  std::optional<double> target_snr;  // non-orthogonal only
  OutageEstimate embb_outage;
  OutageEstimate mtc_outage;
};

// Largest mMTC rate (to rate_tolerance) whose interference-free per-device
// outage on `set` stays within eps_M.
double max_mmtc_rate_orth(const TrialSet& set, const SearchOptions& opts = {});

// Time-sharing line between (0, r_M_out) and (r_B_out, 0); each alpha maps to
// (alpha r_B_out, (1 - alpha) r_M_out).
std::vector<RatePoint> orthogonal_region(const TrialSet& set, std::span<const double> alpha_grid,
                                         const SearchOptions& opts = {});

struct TargetSearch {
  double target_snr = 0.0;
  JointOutage outage;
};

// Smallest target SNR in [max(2^r_B - 1, floor), target_max] whose eMBB outage
// meets eps_B at the given rates, or nullopt if even target_max fails.
std::optional<TargetSearch> min_feasible_target(const TrialSet& set, double mtc_rate, double embb_rate,
                                                const SearchOptions& opts = {});

struct NonOrthogonalPoint {
  double mtc_rate = 0.0;
  double target_snr = 0.0;
  bool feasible = false;  // false when only r_M = 0 is achievable
  JointOutage outage;
};

// Largest mMTC rate at eMBB rate `embb_rate` for which some admissible target
// SNR meets both reliability targets. Throws std::domain_error above r_B_out.
NonOrthogonalPoint max_mmtc_rate_nonorth(const TrialSet& set, double embb_rate, const SearchOptions& opts = {});

std::vector<RatePoint> nonorthogonal_region(const TrialSet& set, std::span<const double> embb_rates,
                                            const SearchOptions& opts = {});

// `points` evenly spaced values over [lo, hi], endpoints exact.
std::vector<double> uniform_grid(double lo, double hi, int points);

// Largest device count meeting the reliability targets at per-device mMTC
// rate `mtc_rate` and eMBB rate `embb_rate`. `scenario.devices` is ignored.
std::size_t max_devices(const SystemConfig& scenario, double mtc_rate, double embb_rate, SlicingMode mode,
                        RunOptions run = {}, const SearchOptions& opts = {});

}  // namespace slicesim
