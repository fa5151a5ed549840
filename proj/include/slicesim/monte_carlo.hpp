#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "slicesim/channel.hpp"
#include "slicesim/sic_decoder.hpp"

namespace slicesim {

struct RunOptions {
  unsigned workers = 0;  // 0: one per hardware thread
  std::size_t cache_limit_bytes = std::size_t{1} << 30;
};

unsigned resolve_workers(unsigned requested);

// Trials are split into fixed-size chunks independent of the worker count, so
// per-chunk partial results (and any in-order reduction of them) do not
// depend on scheduling.
inline constexpr std::uint64_t kChunkTrials = 2048;

// Runs fn(chunk_index, begin_trial, end_trial) for every chunk, on up to
// `workers` threads. The first exception thrown by fn is rethrown.
void parallel_chunks(std::uint64_t trials, unsigned workers,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

struct OutageEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;   // channel realizations
  std::uint64_t samples = 0;  // Bernoulli outcomes behind p_hat (M per trial for mMTC)
  std::uint64_t errors = 0;
  double half_width_95 = 0.0;  // Wilson score interval over `samples`
};

OutageEstimate make_outage_estimate(std::uint64_t errors, std::uint64_t samples, std::uint64_t trials);

// Link statistics for trials [0, cfg.trials) of one scenario. Every estimator
// evaluated on the same set sees identical channels (common random numbers).
// Statistics are materialized once when they fit in opts.cache_limit_bytes and
// recomputed per pass otherwise; both paths yield identical values.
class TrialSet {
 public:
  explicit TrialSet(const SystemConfig& cfg, RunOptions opts = {});

  const SystemConfig& config() const { return cfg_; }
  const RunOptions& options() const { return opts_; }
  std::uint64_t trials() const { return cfg_.trials; }
  std::size_t devices() const { return static_cast<std::size_t>(cfg_.devices); }
  bool cached() const { return !cache_.empty(); }

  template <class Fn>
  void for_each(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (cached()) {
      for (std::uint64_t t = begin; t < end; ++t) {
        fn(t, unpack_link_statistics({cache_.data() + t * stride_, stride_}, devices()));
      }
      return;
    }
    std::vector<double> scratch(stride_);
    for (std::uint64_t t = begin; t < end; ++t) {
      fill(t, scratch);
      fn(t, unpack_link_statistics(scratch, devices()));
    }
  }

 private:
  void fill(std::uint64_t trial, std::span<double> out) const;

  SystemConfig cfg_;
  RunOptions opts_;
  std::size_t stride_;
  std::vector<double> cache_;
};

// Per-device mMTC outage without eMBB interference: failed device-slots over
// M * trials.
OutageEstimate estimate_mmtc_outage_orth(const TrialSet& set, double mtc_rate);
OutageEstimate estimate_mmtc_outage_orth(const SystemConfig& cfg, double mtc_rate, RunOptions opts = {});

struct JointOutage {
  OutageEstimate mtc;
  OutageEstimate embb;
};

// Non-orthogonal slicing with the eMBB always active and inverting its channel
// to `target_snr` (power target/||g_B||^2). Requires target_snr > 0 and
// target_snr >= 2^embb_rate - 1.
JointOutage estimate_joint_outage_nonorth(const TrialSet& set, double mtc_rate, double embb_rate, double target_snr);
JointOutage estimate_joint_outage_nonorth(const SystemConfig& cfg, double mtc_rate, double embb_rate,
                                          double target_snr, RunOptions opts = {});

// Mean transmit power under truncated inversion.
double estimate_embb_power(const SystemConfig& cfg, double threshold, double target, RunOptions opts = {});

// Pr{||g_B||^2 < threshold}.
OutageEstimate estimate_embb_outage_orth(const SystemConfig& cfg, double threshold, RunOptions opts = {});

struct SlicingSample {
  std::uint64_t trial = 0;
  DecodeOutcome outcome;
  double embb_power = 0.0;
  bool embb_transmits = false;
};

SlicingSample sample_orthogonal_trial(const SystemConfig& cfg, std::uint64_t trial, double mtc_rate,
                                      double threshold, double target);
SlicingSample sample_non_orthogonal_trial(const SystemConfig& cfg, std::uint64_t trial, double mtc_rate,
                                          double embb_rate, double target_snr);

}  // namespace slicesim
