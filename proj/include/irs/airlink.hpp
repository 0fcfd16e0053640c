#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irs/channel.hpp"

namespace irs {

/// Phase of RPM symbol `m` (zero-based): 2 pi m / M.
double rpm_phase(int m, int m_rpm);

/// All M phases in increasing order, starting at 0.
std::vector<double> rpm_constellation(int m_rpm);

/// Transmitted hypothesis. Indices are zero-based: antenna t in [0, N_t),
/// phase m in [0, M). `label` packs the bits, BS bits in the high part.
struct SymbolPair {
  int antenna = 0;
  int phase = 0;
  std::uint32_t label = 0;

  friend bool operator==(const SymbolPair&, const SymbolPair&) = default;
};

/// Bit labelling: the first log2(N_t) bits pick the antenna, the remaining
/// log2(M) bits the reflection phase, both in natural binary order.
class BitMapper {
 public:
  BitMapper(int n_t, int m_rpm);

  [[nodiscard]] int bits() const { return bits_bs_ + bits_irs_; }
  [[nodiscard]] int n_t() const { return n_t_; }
  [[nodiscard]] int m_rpm() const { return m_rpm_; }

  /// `bits` is a string of '0'/'1' of length bits(). Throws std::invalid_argument.
  [[nodiscard]] SymbolPair map_bits(std::string_view bits) const;
  [[nodiscard]] SymbolPair from_label(std::uint32_t label) const;
  [[nodiscard]] SymbolPair from_indices(int antenna, int phase) const;

  /// Bit string of the pair; the exact inverse of map_bits.
  [[nodiscard]] std::string demap(const SymbolPair& pair) const;

  /// Hamming distance between two labels.
  [[nodiscard]] static int hamming(const SymbolPair& a, const SymbolPair& b);

 private:
  int n_t_;
  int m_rpm_;
  int bits_bs_;
  int bits_irs_;
};

/// Noise-free receive signatures of one channel use: column t of `base` is
/// sum_n h_{n,t} g_n (= (G^H H)_{:,t}), and lambda_{t,m} = rotation[m] * base.col(t).
struct Signatures {
  CMatrix base;                                 ///< N_r x N_t
  std::vector<std::complex<double>> rotation;  ///< exp(j phi_m)

  [[nodiscard]] CVector lambda(int antenna, int phase) const {
    return rotation[phase] * base.col(antenna);
  }
};

Signatures make_signatures(const CMatrix& h, const CMatrix& g, int m_rpm);

/// y = sqrt(P_s) exp(j phi_m) sum_n h_{n,t} g_n + noise. An empty `noise`
/// vector means noise-free. Throws std::invalid_argument on size mismatch.
CVector synthesize_rx(const ChannelPair& chan, const SymbolPair& pair, int m_rpm, double p_s,
                      const CVector& noise);

/// Exhaustive ML joint detection over all N_t * M hypotheses; ties go to the
/// smallest antenna, then the smallest phase.
SymbolPair ml_detect(const ChannelPair& chan, const CVector& y, const BitMapper& mapper,
                     double p_s);

/// Same search over precomputed signatures.
SymbolPair ml_detect(const Signatures& sig, const CVector& y, const BitMapper& mapper, double p_s);

}  // namespace irs
