#include "irs/channel.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace irs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

static_assert(std::endian::native == std::endian::little,
              "channel dump assumes a little-endian host");

void write_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw std::runtime_error("channel dump: truncated header");
  }
  return v;
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const std::array<double, 2> v{m(r, c).real(), m(r, c).imag()};
      out.write(reinterpret_cast<const char*>(v.data()), sizeof v);
    }
  }
}

CMatrix read_matrix(std::istream& in, std::uint64_t rows, std::uint64_t cols) {
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::array<double, 2> v{};
      if (!in.read(reinterpret_cast<char*>(v.data()), sizeof v)) {
        throw std::runtime_error("channel dump: truncated payload");
      }
      m(r, c) = {v[0], v[1]};
    }
  }
  return m;
}

}  // namespace

CVector steering_irs(double phi_a, double phi_e, int n_x, int n_y, double kappa_over_lambda) {
  if (n_x < 1 || n_y < 1) throw std::invalid_argument("steering_irs: empty grid");
  const double kx = kTwoPi * kappa_over_lambda * std::sin(phi_e) * std::cos(phi_a);
  const double ky = kTwoPi * kappa_over_lambda * std::cos(phi_e);
  CVector a(static_cast<Eigen::Index>(n_x) * n_y);
  for (int ny = 0; ny < n_y; ++ny) {
    for (int nx = 0; nx < n_x; ++nx) {
      a(ny * n_x + nx) = std::polar(1.0, -(nx * kx + ny * ky));
    }
  }
  return a;
}

CVector steering_ula(double phi, int n, double delta_over_lambda) {
  if (n < 1) throw std::invalid_argument("steering_ula: empty array");
  const double k = kTwoPi * delta_over_lambda * std::sin(phi);
  CVector a(n);
  for (int i = 0; i < n; ++i) a(i) = std::polar(1.0, -k * i);
  return a;
}

CMatrix build_h(const SystemConfig& cfg) {
  const CVector irs =
      steering_irs(cfg.phi_a, cfg.phi_e, cfg.n_x, cfg.n_y, cfg.kappa_over_lambda);
  const CVector bs = steering_bs(cfg.phi_d, cfg.n_t, cfg.delta_over_lambda);
  return std::sqrt(cfg.nu_t()) * (irs * bs.transpose());
}

CMatrix build_g_bar(const SystemConfig& cfg) {
  const CVector irs =
      steering_irs(cfg.psi_a, cfg.psi_e, cfg.n_x, cfg.n_y, cfg.kappa_over_lambda);
  const CVector ut = steering_ula(cfg.psi_d, cfg.n_r, cfg.delta_over_lambda);
  return irs * ut.transpose();
}

RicianWeights rician_weights(const SystemConfig& cfg) {
  const double nu_r = cfg.nu_r();
  if (std::isinf(cfg.k_r)) return {std::sqrt(nu_r), 0.0};
  return {std::sqrt(cfg.k_r * nu_r / (1.0 + cfg.k_r)), std::sqrt(nu_r / (1.0 + cfg.k_r))};
}

CMatrix sample_g(const SystemConfig& cfg, const CMatrix& g_bar, CounterRng& rng) {
  return sample_g(rician_weights(cfg), g_bar, rng);
}

CMatrix sample_g(const RicianWeights& w, const CMatrix& g_bar, CounterRng& rng) {
  CMatrix g;
  sample_g_into(w, g_bar, rng, g);
  return g;
}

void sample_g_into(const RicianWeights& w, const CMatrix& g_bar, CounterRng& rng, CMatrix& out) {
  out.resize(g_bar.rows(), g_bar.cols());
  // Column-major fill; the draw order is part of the reproducibility contract.
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) = w.los * g_bar(r, c) + w.nlos * rng.complex_normal();
    }
  }
}

ChannelPair draw_channel_pair(const SystemConfig& cfg, CounterRng& rng) {
  ChannelPair pair;
  pair.h = build_h(cfg);
  pair.g_bar = build_g_bar(cfg);
  pair.g = sample_g(cfg, pair.g_bar, rng);
  return pair;
}

void write_channel_pair(std::ostream& out, const ChannelPair& pair) {
  if (pair.g.rows() != pair.h.rows() || pair.g_bar.rows() != pair.g.rows() ||
      pair.g_bar.cols() != pair.g.cols()) {
    throw std::invalid_argument("write_channel_pair: inconsistent dimensions");
  }
  write_u64(out, static_cast<std::uint64_t>(pair.h.rows()));
  write_u64(out, static_cast<std::uint64_t>(pair.h.cols()));
  write_u64(out, static_cast<std::uint64_t>(pair.g.rows()));
  write_u64(out, static_cast<std::uint64_t>(pair.g.cols()));
  write_matrix(out, pair.h);
  write_matrix(out, pair.g);
  write_matrix(out, pair.g_bar);
}

ChannelPair read_channel_pair(std::istream& in) {
  const auto n = read_u64(in);
  const auto n_t = read_u64(in);
  const auto n_g = read_u64(in);
  const auto n_r = read_u64(in);
  if (n != n_g || n == 0 || n_t == 0 || n_r == 0 || n > (1u << 24) || n_t > 4096 ||
      n_r > 4096) {
    throw std::runtime_error("channel dump: bad dimension header");
  }
  ChannelPair pair;
  pair.h = read_matrix(in, n, n_t);
  pair.g = read_matrix(in, n, n_r);
  pair.g_bar = read_matrix(in, n, n_r);
  return pair;
}

}  // namespace irs
