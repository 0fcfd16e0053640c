#include "irs/rng.hpp"

#include <cmath>
#include <numbers>

namespace irs {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53;
constexpr std::uint32_t kMulB = 0xCD9E8D57;
constexpr std::uint32_t kWeylA = 0x9E3779B9;
constexpr std::uint32_t kWeylB = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

// 53 random bits -> (0, 1].
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t x = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(x + 1) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMulA, ctr[0], lo0, hi0);
    mulhilo(kMulB, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

CounterRng::CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint32_t point,
                       std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_word_((static_cast<std::uint32_t>(purpose) << 24) | (point & 0x00FFFFFFu)),
      trial_(trial) {}

PhiloxCounter CounterRng::next_block() {
  const PhiloxCounter ctr{draw_++, static_cast<std::uint32_t>(trial_),
                          static_cast<std::uint32_t>(trial_ >> 32), stream_word_};
  return philox4x32(ctr, key_);
}

double CounterRng::uniform() {
  const auto b = next_block();
  return to_unit(b[0], b[1]);
}

std::complex<double> CounterRng::complex_normal() {
  const auto b = next_block();
  const double u1 = to_unit(b[0], b[1]);
  const double u2 = to_unit(b[2], b[3]);
  // Box-Muller with radius scaled so that E|z|^2 = 1.
  const double r = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const auto z = complex_normal();
  spare_ = z.imag() * std::numbers::sqrt2;
  has_spare_ = true;
  return z.real() * std::numbers::sqrt2;
}

std::uint32_t CounterRng::bits(int bits) {
  const auto b = next_block();
  if (bits >= 32) return b[0];
  return b[0] & ((1u << bits) - 1u);
}

}  // namespace irs
