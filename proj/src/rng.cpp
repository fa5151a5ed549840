#include "slicesim/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slicesim {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  __extension__ using u128 = unsigned __int128;
  const u128 product = static_cast<u128>(a) * b;
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

inline Philox4x64Block philox_round(const Philox4x64Block& ctr, const Philox4x64Key& key) {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, ctr[0], hi0, lo0);
  mulhilo(kMul1, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

Philox4x64Block philox4x64_10(Philox4x64Block counter, Philox4x64Key key) {
  counter = philox_round(counter, key);
  for (int round = 1; round < 10; ++round) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    counter = philox_round(counter, key);
  }
  return counter;
}

std::uint64_t RngStream::next_u64() {
  if (lane_ == buffer_.size()) {
    buffer_ = philox4x64_10({block_, stream_id_, 0, 0}, {seed_, 0});
    ++block_;
    lane_ = 0;
  }
  return buffer_[lane_++];
}

double RngStream::next_open_unit() {
  constexpr double scale = 0x1.0p-53;
  return (static_cast<double>(next_u64() >> 11) + 0.5) * scale;
}

void fill_complex_gaussian(std::span<std::complex<double>> out, double variance, RngStream& rng) {
  if (!(variance > 0.0)) {
    throw std::invalid_argument("fill_complex_gaussian: variance must be positive");
  }
  for (auto& entry : out) {
    const double u1 = rng.next_open_unit();
    const double u2 = rng.next_open_unit();
    // |entry|^2 = -variance * ln(u1) is exactly Exp(variance).
    const double radius = std::sqrt(-variance * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    entry = {radius * std::cos(angle), radius * std::sin(angle)};
  }
}

Eigen::VectorXcd sample_complex_gaussian_vector(Eigen::Index length, double variance, RngStream& rng) {
  if (length <= 0) {
    throw std::invalid_argument("sample_complex_gaussian_vector: length must be positive");
  }
  Eigen::VectorXcd out(length);
  fill_complex_gaussian({out.data(), static_cast<std::size_t>(length)}, variance, rng);
  return out;
}

}  // namespace slicesim
