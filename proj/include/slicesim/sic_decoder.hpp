#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace slicesim {

// Everything MRC-SIC decoding needs from one realization, with devices listed
// in SIC order (strongest first). Because decoding always proceeds down this
// order and cancels perfectly, the MTC interference seen at step k is always
// the full sum over the devices after k; storing that sum per device is enough.
struct LinkStatisticsView {
  std::span<const double> norm;            // ||g_k||^2
  std::span<const double> mtc_interference;  // Σ_{j>k} |g_k^H g_j|^2
  std::span<const double> embb_cross;      // |g_k^H g_B|^2
  double embb_norm = 0.0;                  // ||g_B||^2

  std::size_t devices() const { return norm.size(); }
};

struct LinkStatistics {
  std::vector<std::size_t> order;  // order[k] = original index of the k-th strongest device
  std::vector<double> norm;
  std::vector<double> mtc_interference;
  std::vector<double> embb_cross;
  double embb_norm = 0.0;

  LinkStatisticsView view() const { return {norm, mtc_interference, embb_cross, embb_norm}; }
};

// Descending column squared norm, ties by ascending original index.
std::vector<std::size_t> sic_order(const Eigen::MatrixXcd& mtc);

// `embb` may be empty (orthogonal use); embb_cross and embb_norm are then zero.
LinkStatistics link_statistics(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb);

// Writes the 3M + 1 statistics of one realization into `out` as
// [norm(M), mtc_interference(M), embb_cross(M), embb_norm].
void pack_link_statistics(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb, std::span<double> out);
LinkStatisticsView unpack_link_statistics(std::span<const double> packed, std::size_t devices);

// Minimum SINR for rate r: log2(1 + sinr) >= r. A relative slack of 1e-12 makes
// the boundary inclusive under rounding.
double sinr_threshold(double rate);
bool meets_threshold(double sinr, double threshold);

// Result in SIC-order terms. The decoded MTC devices are always a prefix of
// the SIC order.
struct SicResult {
  std::size_t mtc_decoded = 0;
  bool embb_decoded = false;
  std::optional<std::size_t> embb_step;  // number of MTC devices decoded before the eMBB
};

SicResult run_sic_orthogonal(const LinkStatisticsView& link, double mtc_power, double mtc_threshold);

// Interleaved procedure: MTC devices are decoded under eMBB interference until
// one fails; the eMBB is then attempted against all still-undecoded MTC
// devices (the failed one included). On success its interference is removed
// and the failed device is retried; on failure decoding stops. If every MTC
// device decodes first, the eMBB is decoded interference-free at the end.
SicResult run_sic_non_orthogonal(const LinkStatisticsView& link, double mtc_power, double embb_power,
                                 double mtc_threshold, double embb_threshold);

struct DecodeOutcome {
  std::vector<bool> mtc_decoded;  // by original device index
  bool embb_present = false;
  bool embb_decoded = false;
  std::optional<std::size_t> embb_decode_step;
};

DecodeOutcome decode_orthogonal(const Eigen::MatrixXcd& mtc, double mtc_power, double mtc_rate);

DecodeOutcome decode_non_orthogonal(const Eigen::MatrixXcd& mtc, const Eigen::VectorXcd& embb,
                                    double mtc_power, double embb_power, double mtc_rate, double embb_rate);

}  // namespace slicesim
