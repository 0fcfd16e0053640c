#pragma once

#include "irs/channel.hpp"
#include "irs/sysconfig.hpp"

namespace irs {

/// Parameters of the decision statistic xi = ||lambda_a - lambda_b||^2 for one
/// error event. xi is non-central chi-square with 2 n_r degrees of freedom:
/// each of the 2 n_r real components has variance sigma_sq, and the squared
/// component means add up to s_sq.
struct ErrorEventMoments {
  double s_sq = 0.0;
  double sigma_sq = 0.0;
  int n_r = 1;

  [[nodiscard]] double mean() const { return s_sq + 2.0 * n_r * sigma_sq; }
  [[nodiscard]] double variance() const {
    return 4.0 * n_r * sigma_sq * sigma_sq + 4.0 * sigma_sq * s_sq;
  }
};

/// Moments of ||sum_n d_n g_n||^2 where g_n is the conjugated n-th row of a
/// Rician G with LoS part `g_bar`.
ErrorEventMoments event_moments(const CVector& d, const CMatrix& g_bar, const RicianWeights& w);

/// Antenna error t -> t_hat with the phase detected correctly. The common
/// phase factor drops out, so the result does not depend on m.
/// Indices are zero-based; t == t_hat throws std::invalid_argument.
ErrorEventMoments moments_ssk(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                              int t, int t_hat);

/// Phase error m -> m_hat on a known antenna t.
ErrorEventMoments moments_rpm(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                              int t, int m, int m_hat);

/// Simultaneous antenna and phase error (t, m) -> (t_hat, m_hat).
ErrorEventMoments moments_joint(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                                int t, int t_hat, int m, int m_hat);

/// Density of xi at x > 0. Requires sigma_sq > 0; s_sq == 0 uses the central
/// (gamma) limit. Throws std::domain_error otherwise.
double ncx2_pdf(double x, const ErrorEventMoments& mom);

/// E[exp(-a xi)] = (1 + 2 a sigma^2)^-n_r exp(-a s^2 / (1 + 2 a sigma^2)).
/// Negative `a` is accepted while 1 + 2 a sigma^2 > 0.
double laplace(const ErrorEventMoments& mom, double a);

}  // namespace irs
