#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Core>

namespace slicesim {

using Philox4x64Block = std::array<std::uint64_t, 4>;
using Philox4x64Key = std::array<std::uint64_t, 2>;

// Philox4x64-10 block function (Salmon et al., Random123).
Philox4x64Block philox4x64_10(Philox4x64Block counter, Philox4x64Key key);

// A counter-based random stream. Block b of stream s under seed k is
// philox(counter = {b, s, 0, 0}, key = {k, 0}), so the sequence a stream
// produces depends only on (seed, stream_id) and never on which other
// streams exist or in what order they are consumed.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double next_open_unit();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  Philox4x64Block buffer_{};
  unsigned lane_ = 4;
};

// Fills `out` with i.i.d. CN(0, variance) entries. Each entry consumes exactly
// two raw 64-bit draws (Box-Muller), real and imaginary parts N(0, variance/2).
void fill_complex_gaussian(std::span<std::complex<double>> out, double variance, RngStream& rng);

Eigen::VectorXcd sample_complex_gaussian_vector(Eigen::Index length, double variance, RngStream& rng);

}  // namespace slicesim
