#include "slicesim/sic_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slicesim {

namespace {

constexpr double kThresholdSlack = 1e-12;

double mtc_sinr(double norm, double interference, double mtc_power, double embb_term) {
  if (norm == 0.0) {
    return 0.0;
  }
  return mtc_power * norm * norm / (mtc_power * interference + embb_term + norm);
}

void sort_by_norm(const Eigen::RowVectorXd& norms, std::span<std::size_t> order) {
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return norms(Eigen::Index(a)) > norms(Eigen::Index(b)); });
}

void compute_statistics(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb, std::span<std::size_t> order,
                        double* norm, double* interference, double* cross, double& embb_norm) {
  const auto devices = static_cast<std::size_t>(mtc.cols());
  const Eigen::RowVectorXd norms = mtc.colwise().squaredNorm();
  sort_by_norm(norms, order);

  // Columns in SIC order; only the upper triangle of the Gram matrix is needed.
  Eigen::MatrixXcd sorted(mtc.rows(), mtc.cols());
  for (std::size_t k = 0; k < devices; ++k) {
    sorted.col(Eigen::Index(k)) = mtc.col(Eigen::Index(order[k]));
    norm[k] = norms(Eigen::Index(order[k]));
  }
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(mtc.cols(), mtc.cols());
  gram.selfadjointView<Eigen::Upper>().rankUpdate(sorted.adjoint());
  for (std::size_t k = 0; k < devices; ++k) {
    const auto n = Eigen::Index(devices - k - 1);
    interference[k] = n > 0 ? gram.row(Eigen::Index(k)).tail(n).squaredNorm() : 0.0;
  }

  if (embb.size() == 0) {
    std::fill(cross, cross + devices, 0.0);
    embb_norm = 0.0;
    return;
  }
  if (embb.size() != mtc.rows()) {
    throw std::invalid_argument("link_statistics: eMBB vector length differs from antenna count");
  }
  const Eigen::VectorXcd projections = mtc.adjoint() * embb;
  for (std::size_t k = 0; k < devices; ++k) {
    cross[k] = std::norm(projections(Eigen::Index(order[k])));
  }
  embb_norm = embb.squaredNorm();
}

}  // namespace

std::vector<std::size_t> sic_order(const Eigen::MatrixXcd& mtc) {
  std::vector<std::size_t> order(static_cast<std::size_t>(mtc.cols()));
  sort_by_norm(mtc.colwise().squaredNorm(), order);
  return order;
}

LinkStatistics link_statistics(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb) {
  const auto devices = static_cast<std::size_t>(mtc.cols());
  LinkStatistics out;
  out.order.resize(devices);
  out.norm.resize(devices);
  out.mtc_interference.resize(devices);
  out.embb_cross.resize(devices);
  compute_statistics(mtc, embb, out.order, out.norm.data(), out.mtc_interference.data(), out.embb_cross.data(),
                     out.embb_norm);
  return out;
}

void pack_link_statistics(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb, std::span<double> out) {
  const auto devices = static_cast<std::size_t>(mtc.cols());
  if (out.size() != 3 * devices + 1) {
    throw std::invalid_argument("pack_link_statistics: output span must hold 3M + 1 values");
  }
  std::vector<std::size_t> order(devices);
  compute_statistics(mtc, embb, order, out.data(), out.data() + devices, out.data() + 2 * devices, out[3 * devices]);
}

LinkStatisticsView unpack_link_statistics(std::span<const double> packed, std::size_t devices) {
  return {packed.subspan(0, devices), packed.subspan(devices, devices), packed.subspan(2 * devices, devices),
          packed[3 * devices]};
}

double sinr_threshold(double rate) {
  if (!(rate >= 0.0)) {
    throw std::domain_error("sinr_threshold: rate must be nonnegative");
  }
  return std::exp2(rate) - 1.0;
}

bool meets_threshold(double sinr, double threshold) { return sinr >= threshold * (1.0 - kThresholdSlack); }

SicResult run_sic_orthogonal(const LinkStatisticsView& link, double mtc_power, double mtc_threshold) {
  SicResult result;
  const std::size_t devices = link.devices();
  while (result.mtc_decoded < devices) {
    const std::size_t k = result.mtc_decoded;
    if (!meets_threshold(mtc_sinr(link.norm[k], link.mtc_interference[k], mtc_power, 0.0), mtc_threshold)) {
      break;
    }
    ++result.mtc_decoded;
  }
  return result;
}

SicResult run_sic_non_orthogonal(const LinkStatisticsView& link, double mtc_power, double embb_power,
                                 double mtc_threshold, double embb_threshold) {
  SicResult result;
  const std::size_t devices = link.devices();
  const double embb_signal = embb_power * link.embb_norm * link.embb_norm;

  std::size_t k = 0;
  while (k < devices) {
    const double embb_term = result.embb_decoded ? 0.0 : embb_power * link.embb_cross[k];
    if (meets_threshold(mtc_sinr(link.norm[k], link.mtc_interference[k], mtc_power, embb_term), mtc_threshold)) {
      ++k;
      continue;
    }
    if (result.embb_decoded) {
      break;
    }
    double residual = 0.0;  // MTC power still in the signal, failed device included
    for (std::size_t j = k; j < devices; ++j) {
      residual += link.embb_cross[j];
    }
    const double embb_sinr = embb_signal / (mtc_power * residual + link.embb_norm);
    if (!meets_threshold(embb_sinr, embb_threshold)) {
      break;
    }
    result.embb_decoded = true;
    result.embb_step = k;
  }
  result.mtc_decoded = k;

  if (k == devices && !result.embb_decoded) {
    if (meets_threshold(embb_power * link.embb_norm, embb_threshold)) {
      result.embb_decoded = true;
      result.embb_step = devices;
    }
  }
  return result;
}

namespace {

DecodeOutcome to_outcome(const SicResult& result, const std::vector<std::size_t>& order, bool embb_present) {
  DecodeOutcome out;
  out.mtc_decoded.assign(order.size(), false);
  for (std::size_t k = 0; k < result.mtc_decoded; ++k) {
    out.mtc_decoded[order[k]] = true;
  }
  out.embb_present = embb_present;
  out.embb_decoded = result.embb_decoded;
  out.embb_decode_step = result.embb_step;
  return out;
}

}  // namespace

DecodeOutcome decode_orthogonal(const Eigen::MatrixXcd& mtc, double mtc_power, double mtc_rate) {
  const LinkStatistics link = link_statistics(mtc, Eigen::VectorXcd());
  const SicResult result = run_sic_orthogonal(link.view(), mtc_power, sinr_threshold(mtc_rate));
  return to_outcome(result, link.order, false);
}

DecodeOutcome decode_non_orthogonal(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb, double mtc_power,
                                    double embb_power, double mtc_rate, double embb_rate) {
  if (!(embb_power >= 0.0)) {
    throw std::domain_error("decode_non_orthogonal: eMBB power must be nonnegative");
  }
  const LinkStatistics link = link_statistics(mtc, embb);
  const SicResult result = run_sic_non_orthogonal(link.view(), mtc_power, embb_power, sinr_threshold(mtc_rate),
                                                  sinr_threshold(embb_rate));
  return to_outcome(result, link.order, true);
}

}  // namespace slicesim
