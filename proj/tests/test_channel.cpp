#include <doctest.h>

#include <cmath>
#include <complex>

#include "slicesim/channel.hpp"

using namespace slicesim;

TEST_CASE("configuration validation names the offending field") {
  SystemConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  auto field_of = [](SystemConfig c) {
    try {
      c.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  SystemConfig c = cfg;
  c.antennas = 0;
  CHECK(field_of(c) == "L");
  c = cfg;
  c.devices = -1;
  CHECK(field_of(c) == "M");
  c = cfg;
  c.embb_gain = 0.0;
  CHECK(field_of(c) == "gamma_B");
  c = cfg;
  c.mtc_gain = -1.0;
  CHECK(field_of(c) == "gamma_M");
  c = cfg;
  c.embb_eps = 1.0;
  CHECK(field_of(c) == "eps_B");
  c = cfg;
  c.mtc_eps = 0.0;
  CHECK(field_of(c) == "eps_M");
  c = cfg;
  c.mtc_power = 0.0;
  CHECK(field_of(c) == "P_M");
  c = cfg;
  c.trials = 0;
  CHECK(field_of(c) == "trials");
}

TEST_CASE("dB conversion") {
  CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
  CHECK(db_to_linear(5.0) == doctest::Approx(3.1622776601683795));
  CHECK(db_to_linear(0.0) == 1.0);
}

TEST_CASE("realization shapes, including the empty-device edge") {
  SystemConfig cfg;
  cfg.antennas = 3;
  cfg.devices = 0;
  const auto r = draw_realization(cfg, 0);
  CHECK(r.embb.size() == 3);
  CHECK(r.mtc.rows() == 3);
  CHECK(r.mtc.cols() == 0);
  CHECK(r.embb.squaredNorm() > 0.0);
}

TEST_CASE("realizations are deterministic per trial and nested in the device count") {
  SystemConfig cfg;
  cfg.antennas = 4;
  cfg.devices = 5;
  cfg.seed = 77;
  const auto a = draw_realization(cfg, 123);
  const auto b = draw_realization(cfg, 123);
  CHECK(a.embb == b.embb);
  CHECK(a.mtc == b.mtc);
  CHECK(draw_realization(cfg, 124).embb != a.embb);
  CHECK(draw_embb_channel(cfg, 123) == a.embb);

  SystemConfig more = cfg;
  more.devices = 8;
  const auto c = draw_realization(more, 123);
  CHECK(c.embb == a.embb);
  CHECK(c.mtc.leftCols(5) == a.mtc);
}

TEST_CASE("eMBB channel power averages L times its gain") {
  SystemConfig cfg;
  cfg.antennas = 4;
  cfg.embb_gain = 100.0;
  constexpr int trials = 1000000;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    total += draw_embb_channel(cfg, static_cast<std::uint64_t>(t)).squaredNorm();
  }
  CHECK(total / trials == doctest::Approx(400.0).epsilon(0.01));
}

TEST_CASE("per-entry variances and cross-column correlation") {
  SystemConfig cfg;
  cfg.antennas = 2;
  cfg.devices = 3;
  cfg.embb_gain = 10.0;
  cfg.mtc_gain = 2.0;
  constexpr int trials = 200000;
  double embb_power = 0.0, mtc_power = 0.0;
  std::complex<double> cross{0.0, 0.0};
  for (int t = 0; t < trials; ++t) {
    const auto r = draw_realization(cfg, static_cast<std::uint64_t>(t));
    embb_power += std::norm(r.embb(0));
    mtc_power += std::norm(r.mtc(1, 2));
    cross += r.mtc.col(0).dot(r.mtc.col(1));
  }
  // Exp(Γ) entries: standard error Γ / sqrt(n).
  const double n = trials;
  CHECK(std::abs(embb_power / n - 10.0) < 3.0 * 10.0 / std::sqrt(n));
  CHECK(std::abs(mtc_power / n - 2.0) < 3.0 * 2.0 / std::sqrt(n));
  // g_0^H g_1 has variance L Γ_M^2; the mean over n trials has standard error sqrt(L/n) Γ_M.
  const double se = std::sqrt(cfg.antennas / n) * cfg.mtc_gain;
  CHECK(std::abs(cross / n) / cfg.antennas < 5.0 * se / cfg.antennas);
}
