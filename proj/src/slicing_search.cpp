#include "slicesim/slicing_search.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace slicesim {

namespace {

void warn(const std::string& message) { std::clog << "slicesim: warning: " << message << '\n'; }

double lowest_target(double embb_rate, double target_max, const SearchOptions& opts) {
  return std::min(target_max, std::max(sinr_threshold(embb_rate), target_max * opts.target_floor_ratio));
}

// Target SNR bisection on a log scale; the eMBB outage is taken to be
// nonincreasing in the target.
std::optional<TargetSearch> bisect_target(const TrialSet& set, double mtc_rate, double embb_rate, double lo,
                                          double hi, const SearchOptions& opts) {
  const double eps = set.config().embb_eps;
  auto evaluate = [&](double target) { return estimate_joint_outage_nonorth(set, mtc_rate, embb_rate, target); };

  JointOutage at_lo = evaluate(lo);
  if (at_lo.embb.p_hat <= eps) {
    return TargetSearch{lo, at_lo};
  }
  JointOutage best = evaluate(hi);
  if (best.embb.p_hat > eps) {
    return std::nullopt;
  }
  while (hi > lo * (1.0 + opts.target_rel_tolerance)) {
    const double mid = std::sqrt(lo * hi);
    JointOutage at_mid = evaluate(mid);
    if (at_mid.embb.p_hat <= eps) {
      hi = mid;
      best = at_mid;
    } else {
      lo = mid;
    }
  }
  return TargetSearch{hi, best};
}

std::optional<TargetSearch> scan_target(const TrialSet& set, double mtc_rate, double embb_rate, double lo,
                                        double hi, const SearchOptions& opts, bool& monotone) {
  const double eps = set.config().embb_eps;
  const int points = std::max(2, opts.target_scan_points);
  std::optional<TargetSearch> first_feasible;
  double previous = 2.0;
  monotone = true;
  for (int i = 0; i < points; ++i) {
    const double target = i + 1 == points ? hi : lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    JointOutage outage = estimate_joint_outage_nonorth(set, mtc_rate, embb_rate, target);
    if (outage.embb.p_hat > previous) {
      monotone = false;
    }
    previous = outage.embb.p_hat;
    if (!first_feasible && outage.embb.p_hat <= eps) {
      first_feasible = TargetSearch{target, outage};
    }
  }
  return first_feasible;
}

bool mtc_feasible(const std::optional<TargetSearch>& t, double eps) {
  return t && t->outage.mtc.p_hat <= eps;
}

// Orthogonal rate search result: `feasible` meets eps_M and `infeasible`
// (within rate_tolerance above it) does not, unless the cap was reached.
struct RateBracket {
  double feasible = 0.0;
  double infeasible = 0.0;
  bool capped = false;
};

RateBracket orth_rate_bracket(const TrialSet& set, const SearchOptions& opts) {
  const SystemConfig& cfg = set.config();
  auto feasible = [&](double rate) { return estimate_mmtc_outage_orth(set, rate).p_hat <= cfg.mtc_eps; };

  RateBracket b;
  b.infeasible = std::clamp(std::log2(1.0 + cfg.mtc_power * cfg.antennas * cfg.mtc_gain), opts.rate_tolerance,
                            opts.rate_cap);
  while (feasible(b.infeasible)) {
    b.feasible = b.infeasible;
    if (b.infeasible >= opts.rate_cap) {
      warn("mMTC rate reached the search cap; the reliability target does not bind");
      b.capped = true;
      return b;
    }
    b.infeasible = std::min(2.0 * b.infeasible, opts.rate_cap);
  }
  while (b.infeasible - b.feasible > opts.rate_tolerance) {
    const double mid = 0.5 * (b.feasible + b.infeasible);
    (feasible(mid) ? b.feasible : b.infeasible) = mid;
  }
  return b;
}

// On common channels the non-orthogonal decoded prefix never exceeds the
// orthogonal one, so the orthogonal infeasible endpoint is infeasible here
// too and the search can reuse the orthogonal bracket.
NonOrthogonalPoint nonorth_with_bracket(const TrialSet& set, double embb_rate, const RateBracket& orth,
                                        const SearchOptions& opts) {
  const SystemConfig& cfg = set.config();
  NonOrthogonalPoint point;

  const auto at_zero = min_feasible_target(set, 0.0, embb_rate, opts);
  if (!at_zero) {
    // Unreachable for embb_rate <= r_B_out: at r_M = 0 every MTC device
    // decodes and the eMBB sees its full target SNR.
    const EmbbOperatingPoint op = embb_operating_point(cfg);
    point.target_snr = lowest_target(embb_rate, op.target_snr, opts);
    return point;
  }
  point.target_snr = at_zero->target_snr;
  point.outage = at_zero->outage;
  if (!(orth.feasible > 0.0)) {
    return point;
  }

  if (const auto t = min_feasible_target(set, orth.feasible, embb_rate, opts); mtc_feasible(t, cfg.mtc_eps)) {
    return {orth.feasible, t->target_snr, true, t->outage};
  }
  double lo = 0.0;
  double hi = orth.feasible;
  while (hi - lo > opts.rate_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const auto t = min_feasible_target(set, mid, embb_rate, opts);
    if (mtc_feasible(t, cfg.mtc_eps)) {
      lo = mid;
      point = {mid, t->target_snr, true, t->outage};
    } else {
      hi = mid;
    }
  }
  return point;
}

void require_embb_rate(double embb_rate, double outage_rate) {
  if (!(embb_rate >= 0.0) || embb_rate > outage_rate * (1.0 + 1e-12)) {
    throw std::domain_error("eMBB rate must lie in [0, r_B_out]");
  }
}

}  // namespace

double max_mmtc_rate_orth(const TrialSet& set, const SearchOptions& opts) {
  return orth_rate_bracket(set, opts).feasible;
}

std::vector<RatePoint> orthogonal_region(const TrialSet& set, std::span<const double> alpha_grid,
                                         const SearchOptions& opts) {
  if (alpha_grid.empty()) {
    throw std::invalid_argument("orthogonal_region: empty time-share grid");
  }
  for (double a : alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw std::invalid_argument("orthogonal_region: time share outside [0, 1]");
    }
  }
  const SystemConfig& cfg = set.config();
  const EmbbOperatingPoint op = embb_operating_point(cfg);
  const double mtc_rate_out = max_mmtc_rate_orth(set, opts);
  const OutageEstimate mtc_outage = estimate_mmtc_outage_orth(set, mtc_rate_out);
  const OutageEstimate embb_outage = estimate_embb_outage_orth(cfg, op.threshold_snr, set.options());

  std::vector<RatePoint> points;
  points.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    RatePoint p;
    p.mode = SlicingMode::orthogonal;
    p.alpha = alpha;
    p.embb_rate = alpha * op.outage_rate;
    p.mtc_rate = (1.0 - alpha) * mtc_rate_out;
    p.embb_outage = embb_outage;
    p.mtc_outage = mtc_outage;
    points.push_back(p);
  }
  return points;
}

std::optional<TargetSearch> min_feasible_target(const TrialSet& set, double mtc_rate, double embb_rate,
                                                const SearchOptions& opts) {
  const EmbbOperatingPoint op = embb_operating_point(set.config());
  require_embb_rate(embb_rate, op.outage_rate);
  const double hi = op.target_snr;
  const double lo = lowest_target(embb_rate, hi, opts);

  if (opts.validate_monotonicity) {
    bool monotone = true;
    auto scanned = scan_target(set, mtc_rate, embb_rate, lo, hi, opts, monotone);
    if (!monotone) {
      warn("eMBB outage is not monotone in the target SNR; using the grid scan");
      return scanned;
    }
  }
  return bisect_target(set, mtc_rate, embb_rate, lo, hi, opts);
}

NonOrthogonalPoint max_mmtc_rate_nonorth(const TrialSet& set, double embb_rate, const SearchOptions& opts) {
  require_embb_rate(embb_rate, embb_operating_point(set.config()).outage_rate);
  return nonorth_with_bracket(set, embb_rate, orth_rate_bracket(set, opts), opts);
}

std::vector<RatePoint> nonorthogonal_region(const TrialSet& set, std::span<const double> embb_rates,
                                            const SearchOptions& opts) {
  if (embb_rates.empty()) {
    throw std::invalid_argument("nonorthogonal_region: empty eMBB rate grid");
  }
  const double outage_rate = embb_operating_point(set.config()).outage_rate;
  for (double r : embb_rates) {
    require_embb_rate(r, outage_rate);
  }
  const RateBracket orth = orth_rate_bracket(set, opts);

  std::vector<RatePoint> points;
  points.reserve(embb_rates.size());
  for (double r : embb_rates) {
    const NonOrthogonalPoint np = nonorth_with_bracket(set, r, orth, opts);
    RatePoint p;
    p.mode = SlicingMode::non_orthogonal;
    p.embb_rate = r;
    p.mtc_rate = np.mtc_rate;
    p.target_snr = np.target_snr;
    p.embb_outage = np.outage.embb;
    p.mtc_outage = np.outage.mtc;
    points.push_back(p);
  }
  return points;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1) {
    throw std::invalid_argument("uniform_grid: need at least one point");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  grid.back() = hi;
  return grid;
}

std::size_t max_devices(const SystemConfig& scenario, double mtc_rate, double embb_rate, SlicingMode mode,
                        RunOptions run, const SearchOptions& opts) {
  if (!(mtc_rate > 0.0)) {
    throw std::domain_error("max_devices: mMTC rate must be positive");
  }
  const EmbbOperatingPoint op = embb_operating_point(scenario);
  if (!(embb_rate >= 0.0)) {
    throw std::domain_error("max_devices: eMBB rate must be nonnegative");
  }

  auto with_devices = [&](std::size_t m) {
    SystemConfig cfg = scenario;
    cfg.devices = static_cast<int>(m);
    return cfg;
  };

  std::function<bool(std::size_t)> feasible;
  if (mode == SlicingMode::orthogonal) {
    if (embb_rate >= op.outage_rate) {
      return 0;
    }
    const double alpha = embb_rate / op.outage_rate;
    const double slot_rate = mtc_rate / (1.0 - alpha);
    feasible = [&, slot_rate](std::size_t m) {
      return estimate_mmtc_outage_orth(TrialSet(with_devices(m), run), slot_rate).p_hat <= scenario.mtc_eps;
    };
  } else {
    if (embb_rate > op.outage_rate * (1.0 + 1e-12)) {
      return 0;
    }
    const double rate = std::min(embb_rate, op.outage_rate);
    feasible = [&, rate](std::size_t m) {
      return mtc_feasible(min_feasible_target(TrialSet(with_devices(m), run), mtc_rate, rate, opts),
                          scenario.mtc_eps);
    };
  }

  if (!feasible(1)) {
    return 0;
  }
  std::size_t lo = 1;
  std::size_t hi = 2;
  while (feasible(hi)) {
    lo = hi;
    if (hi >= static_cast<std::size_t>(opts.device_cap)) {
      warn("device count reached the search cap");
      return lo;
    }
    hi = std::min<std::size_t>(2 * hi, static_cast<std::size_t>(opts.device_cap));
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace slicesim
