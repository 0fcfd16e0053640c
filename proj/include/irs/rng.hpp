#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace irs {

/// Philox4x32-10 block function (Salmon et al., SC'11): maps a 128-bit
/// counter and a 64-bit key to 128 pseudo-random bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Independent draw sequences used by one run. Tags keep sequences for
/// different purposes disjoint even when they share an index.
enum class StreamPurpose : std::uint32_t {
  kBer = 1,
  kCapacity = 2,
  kPairwise = 3,
  kMoments = 4,
  kTest = 0xff,
};

/// Counter-based generator for one Monte-Carlo trial.
///
/// The sequence is a pure function of (seed, purpose, point, trial): the key is
/// the seed, and the counter packs the draw index, the trial index and a word
/// combining purpose and sweep point. Any trial can therefore be reproduced in
/// isolation, whatever worker happens to run it.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint32_t point, std::uint64_t trial);

  /// 128 fresh bits.
  PhiloxCounter next_block();

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform();

  /// Circularly-symmetric complex Gaussian, unit variance (each part 1/2).
  std::complex<double> complex_normal();

  /// Standard real normal (consumes half of a Box-Muller pair).
  double normal();

  /// The low `bits` bits of a fresh block (bits <= 32).
  std::uint32_t bits(int bits);

 private:
  PhiloxKey key_;
  std::uint32_t stream_word_;
  std::uint64_t trial_;
  std::uint32_t draw_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace irs
