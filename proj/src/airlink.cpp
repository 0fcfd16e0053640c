#include "irs/airlink.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irs {

double rpm_phase(int m, int m_rpm) {
  return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(m_rpm);
}

std::vector<double> rpm_constellation(int m_rpm) {
  std::vector<double> phases(m_rpm);
  for (int m = 0; m < m_rpm; ++m) phases[m] = rpm_phase(m, m_rpm);
  return phases;
}

BitMapper::BitMapper(int n_t, int m_rpm) : n_t_(n_t), m_rpm_(m_rpm) {
  if (n_t < 1 || !std::has_single_bit(static_cast<unsigned>(n_t)) || m_rpm < 1 ||
      !std::has_single_bit(static_cast<unsigned>(m_rpm))) {
    throw std::invalid_argument("BitMapper: N_t and M must be powers of two");
  }
  bits_bs_ = std::countr_zero(static_cast<unsigned>(n_t));
  bits_irs_ = std::countr_zero(static_cast<unsigned>(m_rpm));
  if (bits_bs_ + bits_irs_ > 31) throw std::invalid_argument("BitMapper: label too wide");
}

SymbolPair BitMapper::map_bits(std::string_view bits) const {
  if (static_cast<int>(bits.size()) != this->bits()) {
    throw std::invalid_argument("map_bits: expected " + std::to_string(this->bits()) +
                                " bits, got " + std::to_string(bits.size()));
  }
  std::uint32_t label = 0;
  for (const char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("map_bits: non-binary character");
    label = (label << 1) | static_cast<std::uint32_t>(c == '1');
  }
  return from_label(label);
}

SymbolPair BitMapper::from_label(std::uint32_t label) const {
  if (label >> bits() != 0) throw std::invalid_argument("from_label: label out of range");
  return {static_cast<int>(label >> bits_irs_),
          static_cast<int>(label & ((1u << bits_irs_) - 1u)), label};
}

SymbolPair BitMapper::from_indices(int antenna, int phase) const {
  if (antenna < 0 || antenna >= n_t_ || phase < 0 || phase >= m_rpm_) {
    throw std::invalid_argument("from_indices: index out of range");
  }
  return {antenna, phase,
          (static_cast<std::uint32_t>(antenna) << bits_irs_) | static_cast<std::uint32_t>(phase)};
}

std::string BitMapper::demap(const SymbolPair& pair) const {
  const std::uint32_t label = from_indices(pair.antenna, pair.phase).label;
  std::string out(bits(), '0');
  for (int i = 0; i < bits(); ++i) {
    if ((label >> (bits() - 1 - i)) & 1u) out[i] = '1';
  }
  return out;
}

int BitMapper::hamming(const SymbolPair& a, const SymbolPair& b) {
  return std::popcount(a.label ^ b.label);
}

Signatures make_signatures(const CMatrix& h, const CMatrix& g, int m_rpm) {
  if (h.rows() != g.rows()) throw std::invalid_argument("make_signatures: N mismatch");
  Signatures sig;
  sig.base = g.adjoint() * h;
  sig.rotation.resize(m_rpm);
  for (int m = 0; m < m_rpm; ++m) sig.rotation[m] = std::polar(1.0, rpm_phase(m, m_rpm));
  return sig;
}

CVector synthesize_rx(const ChannelPair& chan, const SymbolPair& pair, int m_rpm, double p_s,
                      const CVector& noise) {
  if (!(p_s >= 0.0)) throw std::invalid_argument("synthesize_rx: negative power");
  if (chan.h.rows() != chan.g.rows()) throw std::invalid_argument("synthesize_rx: N mismatch");
  if (pair.antenna < 0 || pair.antenna >= chan.h.cols() || pair.phase < 0 ||
      pair.phase >= m_rpm) {
    throw std::invalid_argument("synthesize_rx: symbol outside the constellation");
  }
  if (noise.size() != 0 && noise.size() != chan.g.cols()) {
    throw std::invalid_argument("synthesize_rx: noise length differs from N_r");
  }
  const std::complex<double> rot = std::polar(1.0, rpm_phase(pair.phase, m_rpm));
  CVector y = (std::sqrt(p_s) * rot) * (chan.g.adjoint() * chan.h.col(pair.antenna));
  if (noise.size() != 0) y += noise;
  return y;
}

SymbolPair ml_detect(const ChannelPair& chan, const CVector& y, const BitMapper& mapper,
                     double p_s) {
  return ml_detect(make_signatures(chan.h, chan.g, mapper.m_rpm()), y, mapper, p_s);
}

SymbolPair ml_detect(const Signatures& sig, const CVector& y, const BitMapper& mapper,
                     double p_s) {
  if (y.size() != sig.base.rows()) throw std::invalid_argument("ml_detect: y has wrong length");
  const double amp = std::sqrt(p_s);
  double best = std::numeric_limits<double>::infinity();
  int best_t = 0, best_m = 0;
  for (int t = 0; t < static_cast<int>(sig.base.cols()); ++t) {
    for (int m = 0; m < static_cast<int>(sig.rotation.size()); ++m) {
      const std::complex<double> scale = amp * sig.rotation[m];
      double metric = 0.0;
      for (Eigen::Index r = 0; r < y.size(); ++r) metric += std::norm(y(r) - scale * sig.base(r, t));
      if (metric < best) {
        best = metric;
        best_t = t;
        best_m = m;
      }
    }
  }
  return mapper.from_indices(best_t, best_m);
}

}  // namespace irs
