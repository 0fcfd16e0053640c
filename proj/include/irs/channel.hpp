#pragma once

#include <Eigen/Dense>
#include <istream>
#include <ostream>

#include "irs/rng.hpp"
#include "irs/sysconfig.hpp"

namespace irs {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Planar-array response of the IRS. Element (nx, ny) sits at index
/// ny * n_x + nx and carries exp(-j 2pi kappa/lambda (nx sin(e) cos(a) + ny cos(e))).
CVector steering_irs(double phi_a, double phi_e, int n_x, int n_y, double kappa_over_lambda);

/// Uniform linear array response: entry k is exp(-j 2pi delta/lambda k sin(phi)).
CVector steering_ula(double phi, int n, double delta_over_lambda);

/// BS array response; same law as steering_ula.
inline CVector steering_bs(double phi_d, int n_t, double delta_over_lambda) {
  return steering_ula(phi_d, n_t, delta_over_lambda);
}

/// Deterministic BS to IRS channel sqrt(nu) a_IRS(phi_a, phi_e) a_BS(phi_d), N x N_t.
CMatrix build_h(const SystemConfig& cfg);

/// LoS part of the IRS to UT channel a_IRS(psi_a, psi_e) a_UT(psi_d), N x N_r.
CMatrix build_g_bar(const SystemConfig& cfg);

/// Amplitudes splitting G into LoS and diffuse parts:
/// G = los * G_bar + nlos * W with W ~ CN(0, 1) entrywise.
struct RicianWeights {
  double los = 0.0;   ///< sqrt(K nu_r / (1 + K))
  double nlos = 0.0;  ///< sqrt(nu_r / (1 + K))
};

RicianWeights rician_weights(const SystemConfig& cfg);

/// One Rician draw of G.
CMatrix sample_g(const SystemConfig& cfg, const CMatrix& g_bar, CounterRng& rng);
CMatrix sample_g(const RicianWeights& w, const CMatrix& g_bar, CounterRng& rng);

/// In-place form for hot loops; `out` is resized to match g_bar.
void sample_g_into(const RicianWeights& w, const CMatrix& g_bar, CounterRng& rng, CMatrix& out);

/// One channel realization.
struct ChannelPair {
  CMatrix h;      ///< N x N_t, BS to IRS
  CMatrix g;      ///< N x N_r, IRS to UT
  CMatrix g_bar;  ///< N x N_r, LoS component of g
};

ChannelPair draw_channel_pair(const SystemConfig& cfg, CounterRng& rng);

/// Fixture dump: four little-endian uint64 (N, N_t, N, N_r), then h, g and
/// g_bar row-major as interleaved little-endian float64 (re, im).
void write_channel_pair(std::ostream& out, const ChannelPair& pair);
ChannelPair read_channel_pair(std::istream& in);

}  // namespace irs
