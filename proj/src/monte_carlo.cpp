#include "slicesim/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "slicesim/embb_analysis.hpp"

namespace slicesim {

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::uint64_t trials, unsigned workers,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
  const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), chunks));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      try {
        const std::uint64_t begin = c * kChunkTrials;
        fn(static_cast<std::size_t>(c), begin, std::min(trials, begin + kChunkTrials));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
        next.store(chunks);
      }
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned i = 1; i < threads; ++i) {
      pool.emplace_back(work);
    }
    work();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

OutageEstimate make_outage_estimate(std::uint64_t errors, std::uint64_t samples, std::uint64_t trials) {
  OutageEstimate est;
  est.errors = errors;
  est.samples = samples;
  est.trials = trials;
  if (samples == 0) {
    return est;
  }
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(errors) / n;
  est.p_hat = p;
  est.half_width_95 = z / (1.0 + z * z / n) * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
  return est;
}

TrialSet::TrialSet(const SystemConfig& cfg, RunOptions opts)
    : cfg_(cfg), opts_(opts), stride_(3 * static_cast<std::size_t>(cfg.devices) + 1) {
  cfg_.validate();
  const double bytes = static_cast<double>(stride_) * static_cast<double>(cfg_.trials) * sizeof(double);
  if (bytes > static_cast<double>(opts_.cache_limit_bytes)) {
    return;
  }
  cache_.resize(stride_ * cfg_.trials);
  parallel_chunks(cfg_.trials, opts_.workers, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      fill(t, {cache_.data() + t * stride_, stride_});
    }
  });
}

void TrialSet::fill(std::uint64_t trial, std::span<double> out) const {
  const ChannelRealization channel = draw_realization(cfg_, trial);
  pack_link_statistics(channel.mtc, channel.embb, out);
}

namespace {

struct FailureCounts {
  std::uint64_t mtc = 0;
  std::uint64_t embb = 0;
};

template <class PerTrial>
FailureCounts count_failures(const TrialSet& set, PerTrial per_trial) {
  const std::uint64_t chunks = (set.trials() + kChunkTrials - 1) / kChunkTrials;
  std::vector<FailureCounts> partial(chunks);
  parallel_chunks(set.trials(), set.options().workers, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    FailureCounts local;
    set.for_each(begin, end, [&](std::uint64_t, const LinkStatisticsView& link) { per_trial(link, local); });
    partial[c] = local;
  });
  FailureCounts total;
  for (const auto& p : partial) {
    total.mtc += p.mtc;
    total.embb += p.embb;
  }
  return total;
}

void require_devices(const SystemConfig& cfg) {
  if (cfg.devices < 1) {
    throw std::domain_error("mMTC outage needs at least one MTC device");
  }
}

}  // namespace

OutageEstimate estimate_mmtc_outage_orth(const TrialSet& set, double mtc_rate) {
  require_devices(set.config());
  const double threshold = sinr_threshold(mtc_rate);
  const double power = set.config().mtc_power;
  const std::size_t devices = set.devices();
  const FailureCounts counts = count_failures(set, [&](const LinkStatisticsView& link, FailureCounts& local) {
    local.mtc += devices - run_sic_orthogonal(link, power, threshold).mtc_decoded;
  });
  return make_outage_estimate(counts.mtc, devices * set.trials(), set.trials());
}

OutageEstimate estimate_mmtc_outage_orth(const SystemConfig& cfg, double mtc_rate, RunOptions opts) {
  require_devices(cfg);
  opts.cache_limit_bytes = 0;
  return estimate_mmtc_outage_orth(TrialSet(cfg, opts), mtc_rate);
}

JointOutage estimate_joint_outage_nonorth(const TrialSet& set, double mtc_rate, double embb_rate,
                                          double target_snr) {
  require_devices(set.config());
  const double embb_threshold = sinr_threshold(embb_rate);
  if (!(target_snr > 0.0) || !meets_threshold(target_snr, embb_threshold)) {
    throw std::domain_error("estimate_joint_outage_nonorth: target SNR cannot support the eMBB rate");
  }
  const double mtc_threshold = sinr_threshold(mtc_rate);
  const double power = set.config().mtc_power;
  const std::size_t devices = set.devices();
  const FailureCounts counts = count_failures(set, [&](const LinkStatisticsView& link, FailureCounts& local) {
    const double embb_power = target_snr / link.embb_norm;
    const SicResult r = run_sic_non_orthogonal(link, power, embb_power, mtc_threshold, embb_threshold);
    local.mtc += devices - r.mtc_decoded;
    local.embb += r.embb_decoded ? 0 : 1;
  });
  return {make_outage_estimate(counts.mtc, devices * set.trials(), set.trials()),
          make_outage_estimate(counts.embb, set.trials(), set.trials())};
}

JointOutage estimate_joint_outage_nonorth(const SystemConfig& cfg, double mtc_rate, double embb_rate,
                                          double target_snr, RunOptions opts) {
  require_devices(cfg);
  opts.cache_limit_bytes = 0;
  return estimate_joint_outage_nonorth(TrialSet(cfg, opts), mtc_rate, embb_rate, target_snr);
}

double estimate_embb_power(const SystemConfig& cfg, double threshold, double target, RunOptions opts) {
  cfg.validate();
  const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(cfg.trials, opts.workers, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    double sum = 0.0;
    for (std::uint64_t t = begin; t < end; ++t) {
      sum += power_inversion(draw_embb_channel(cfg, t).squaredNorm(), threshold, target);
    }
    partial[c] = sum;
  });
  double total = 0.0;
  for (double p : partial) {
    total += p;
  }
  return total / static_cast<double>(cfg.trials);
}

OutageEstimate estimate_embb_outage_orth(const SystemConfig& cfg, double threshold, RunOptions opts) {
  cfg.validate();
  const std::uint64_t chunks = (cfg.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_chunks(cfg.trials, opts.workers, [&](std::size_t c, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t silent = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      silent += draw_embb_channel(cfg, t).squaredNorm() < threshold ? 1 : 0;
    }
    partial[c] = silent;
  });
  std::uint64_t total = 0;
  for (auto p : partial) {
    total += p;
  }
  return make_outage_estimate(total, cfg.trials, cfg.trials);
}

SlicingSample sample_orthogonal_trial(const SystemConfig& cfg, std::uint64_t trial, double mtc_rate,
                                      double threshold, double target) {
  const ChannelRealization channel = draw_realization(cfg, trial);
  SlicingSample s;
  s.trial = trial;
  s.outcome = decode_orthogonal(channel.mtc, cfg.mtc_power, mtc_rate);
  s.embb_power = power_inversion(channel.embb.squaredNorm(), threshold, target);
  s.embb_transmits = s.embb_power > 0.0;
  return s;
}

SlicingSample sample_non_orthogonal_trial(const SystemConfig& cfg, std::uint64_t trial, double mtc_rate,
                                          double embb_rate, double target_snr) {
  const ChannelRealization channel = draw_realization(cfg, trial);
  SlicingSample s;
  s.trial = trial;
  s.embb_power = target_snr / channel.embb.squaredNorm();
  s.embb_transmits = true;
  s.outcome = decode_non_orthogonal(channel.mtc, channel.embb, cfg.mtc_power, s.embb_power, mtc_rate, embb_rate);
  return s;
}

}  // namespace slicesim
