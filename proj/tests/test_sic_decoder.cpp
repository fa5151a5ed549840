#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "slicesim/sic_decoder.hpp"

using namespace slicesim;

namespace {

Eigen::MatrixXcd real_columns(std::initializer_list<double> gains) {
  Eigen::MatrixXcd g(1, static_cast<Eigen::Index>(gains.size()));
  Eigen::Index i = 0;
  for (double v : gains) {
    g(0, i++) = v;
  }
  return g;
}

Eigen::VectorXcd real_vector(double v) {
  Eigen::VectorXcd g(1);
  g(0) = v;
  return g;
}

struct RandomLink {
  Eigen::MatrixXcd mtc;
  Eigen::VectorXcd embb;
};

// Hand-rolled generator for property checks: random shapes and gains.
RandomLink random_link(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> antennas(1, 6), devices(1, 12);
  std::uniform_real_distribution<double> log_gain(-1.0, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int l = antennas(gen), m = devices(gen);
  const double mtc_scale = std::pow(10.0, log_gain(gen));
  const double embb_scale = std::pow(10.0, log_gain(gen));
  RandomLink out{Eigen::MatrixXcd(l, m), Eigen::VectorXcd(l)};
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < m; ++j) {
      out.mtc(i, j) = mtc_scale * std::complex<double>(normal(gen), normal(gen));
    }
    out.embb(i) = embb_scale * std::complex<double>(normal(gen), normal(gen));
  }
  return out;
}

}  // namespace

TEST_CASE("SIC order sorts by descending column power with index tie-break") {
  CHECK(sic_order(real_columns({0.7})) == std::vector<std::size_t>{0});

  Eigen::MatrixXcd g(2, 3);
  g << 1.0, 2.0, 1.0,
       0.0, 0.0, 1.0;  // squared norms 1, 4, 2
  CHECK(sic_order(g) == std::vector<std::size_t>{1, 2, 0});

  Eigen::MatrixXcd tie(2, 3);
  tie << 1.0, 0.0, 1.0,
         0.0, 1.0, 0.0;
  CHECK(sic_order(tie) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("orthogonal decoding of hand-computed cases") {
  const auto single = decode_orthogonal(real_columns({std::sqrt(3.0)}), 1.0, 2.0);
  CHECK(single.mtc_decoded == std::vector<bool>{true});
  CHECK_FALSE(single.embb_present);
  CHECK_FALSE(single.embb_decoded);

  // g1 = 2, g2 = 1: σ1 = 16 / (4 + 4) = 2, σ2 = 1.
  const auto g = real_columns({2.0, 1.0});
  CHECK(decode_orthogonal(g, 1.0, 1.0).mtc_decoded == std::vector<bool>{true, true});
  CHECK(decode_orthogonal(g, 1.0, 1.2).mtc_decoded == std::vector<bool>{true, false});
  CHECK(decode_orthogonal(g, 1.0, 1.7).mtc_decoded == std::vector<bool>{false, false});

  // Same devices listed weakest first: flags follow original indices.
  CHECK(decode_orthogonal(real_columns({1.0, 2.0}), 1.0, 1.2).mtc_decoded == std::vector<bool>{false, true});
}

TEST_CASE("non-orthogonal decoding of hand-computed cases") {
  const auto g = real_columns({2.0, 1.0});
  const auto gb = real_vector(1.0);

  // σ1 = 16/(4+16+4) = 2/3 fails; σB = 4/(5+1) = 2/3 >= 2^0.5 - 1; retry σ1 = 2, then σ2 = 1.
  const auto ok = decode_non_orthogonal(g, gb, 1.0, 4.0, 1.0, 0.5);
  CHECK(ok.mtc_decoded == std::vector<bool>{true, true});
  CHECK(ok.embb_present);
  CHECK(ok.embb_decoded);
  REQUIRE(ok.embb_decode_step.has_value());
  CHECK(*ok.embb_decode_step == 0);

  // log2(5/3) = 0.737 < 1: the eMBB attempt fails and decoding stops.
  const auto fail = decode_non_orthogonal(g, gb, 1.0, 4.0, 1.0, 1.0);
  CHECK(fail.mtc_decoded == std::vector<bool>{false, false});
  CHECK(fail.embb_present);
  CHECK_FALSE(fail.embb_decoded);
  CHECK_FALSE(fail.embb_decode_step.has_value());

  // Weak eMBB: σ1 = 16/8.04, σ2 = 1/1.01 both clear 2^0.9 - 1; eMBB last and interference-free.
  const auto last = decode_non_orthogonal(g, gb, 1.0, 0.01, 0.9, 0.01);
  CHECK(last.mtc_decoded == std::vector<bool>{true, true});
  CHECK(last.embb_decoded);
  CHECK(*last.embb_decode_step == 2);
}

TEST_CASE("zero-rate thresholds decode everything") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const auto link = random_link(gen);
    const auto out = decode_orthogonal(link.mtc, 1.0, 0.0);
    CHECK(std::all_of(out.mtc_decoded.begin(), out.mtc_decoded.end(), [](bool b) { return b; }));
  }
}

TEST_CASE("zero eMBB power reduces to orthogonal decoding") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> rate(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const auto link = random_link(gen);
    const double r = rate(gen);
    const auto orth = decode_orthogonal(link.mtc, 1.0, r);
    const auto zero_rate = decode_non_orthogonal(link.mtc, link.embb, 1.0, 0.0, r, 0.0);
    const auto positive_rate = decode_non_orthogonal(link.mtc, link.embb, 1.0, 0.0, r, 0.3);
    CHECK(zero_rate.mtc_decoded == orth.mtc_decoded);
    CHECK(positive_rate.mtc_decoded == orth.mtc_decoded);
    CHECK(zero_rate.embb_decoded);
    CHECK_FALSE(positive_rate.embb_decoded);
  }
}

TEST_CASE("decoded sets are SIC-order prefixes and shrink with the rate") {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 500; ++i) {
    const auto link = random_link(gen);
    const LinkStatistics stats = link_statistics(link.mtc, link.embb);
    std::size_t previous = stats.norm.size();
    for (double r = 0.0; r < 6.0; r += 0.25) {
      const auto out = decode_orthogonal(link.mtc, 1.0, r);
      std::size_t prefix = 0;
      while (prefix < stats.order.size() && out.mtc_decoded[stats.order[prefix]]) {
        ++prefix;
      }
      for (std::size_t k = prefix; k < stats.order.size(); ++k) {
        CHECK_FALSE(out.mtc_decoded[stats.order[k]]);
      }
      CHECK(prefix <= previous);
      previous = prefix;
    }
  }
}

TEST_CASE("eMBB interference never helps the MTC devices") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> rate(0.0, 2.0), power(0.0, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const auto link = random_link(gen);
    const double rm = rate(gen), rb = rate(gen);
    const auto orth = link_statistics(link.mtc, link.embb);
    const auto o = run_sic_orthogonal(orth.view(), 1.0, sinr_threshold(rm));
    const auto n = run_sic_non_orthogonal(orth.view(), 1.0, power(gen), sinr_threshold(rm), sinr_threshold(rb));
    CHECK(n.mtc_decoded <= o.mtc_decoded);
    if (n.embb_step) {
      CHECK(n.embb_decoded);
    }
  }
}

TEST_CASE("single-device SINR equals its received SNR") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    Eigen::MatrixXcd g(4, 1);
    for (int a = 0; a < 4; ++a) {
      g(a, 0) = {normal(gen), normal(gen)};
    }
    const double snr = 2.5 * g.squaredNorm();
    CHECK(decode_orthogonal(g, 2.5, std::log2(1.0 + snr) * (1.0 - 1e-9)).mtc_decoded[0]);
    CHECK_FALSE(decode_orthogonal(g, 2.5, std::log2(1.0 + snr) * (1.0 + 1e-9)).mtc_decoded[0]);
  }
}

TEST_CASE("link statistics obey Cauchy-Schwarz and pack consistently") {
  std::mt19937_64 gen(34);
  for (int i = 0; i < 500; ++i) {
    const auto link = random_link(gen);
    const LinkStatistics s = link_statistics(link.mtc, link.embb);
    const std::size_t m = s.norm.size();
    for (std::size_t k = 0; k < m; ++k) {
      double bound = 0.0;
      for (std::size_t j = k + 1; j < m; ++j) {
        bound += s.norm[k] * s.norm[j];
      }
      CHECK(s.mtc_interference[k] >= 0.0);
      CHECK(s.mtc_interference[k] <= bound * (1.0 + 1e-9));
      CHECK(s.embb_cross[k] <= s.norm[k] * s.embb_norm * (1.0 + 1e-9));
      if (k > 0) {
        CHECK(s.norm[k - 1] >= s.norm[k]);
      }
    }
    std::vector<double> packed(3 * m + 1);
    pack_link_statistics(link.mtc, link.embb, packed);
    const auto view = unpack_link_statistics(packed, m);
    CHECK(std::equal(view.norm.begin(), view.norm.end(), s.norm.begin()));
    CHECK(std::equal(view.mtc_interference.begin(), view.mtc_interference.end(), s.mtc_interference.begin()));
    CHECK(std::equal(view.embb_cross.begin(), view.embb_cross.end(), s.embb_cross.begin()));
    CHECK(view.embb_norm == s.embb_norm);
  }
}
