#include "irs/ncx2.hpp"

#include <cmath>
#include <stdexcept>

#include "irs/airlink.hpp"
#include "irs/special.hpp"

namespace irs {

namespace {

void check_index(int v, Eigen::Index limit, const char* what) {
  if (v < 0 || v >= limit) throw std::invalid_argument(std::string(what) + " out of range");
}

std::complex<double> unit(int m, int m_rpm) { return std::polar(1.0, rpm_phase(m, m_rpm)); }

}  // namespace

ErrorEventMoments event_moments(const CVector& d, const CMatrix& g_bar, const RicianWeights& w) {
  if (d.size() != g_bar.rows()) throw std::invalid_argument("event_moments: N mismatch");
  ErrorEventMoments mom;
  mom.n_r = static_cast<int>(g_bar.cols());
  mom.sigma_sq = 0.5 * w.nlos * w.nlos * d.squaredNorm();
  mom.s_sq = w.los * w.los * (g_bar.adjoint() * d).squaredNorm();
  return mom;
}

ErrorEventMoments moments_ssk(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                              int t, int t_hat) {
  check_index(t, h.cols(), "t");
  check_index(t_hat, h.cols(), "t_hat");
  if (t == t_hat) throw std::invalid_argument("moments_ssk: t == t_hat is not an error event");
  return event_moments(h.col(t) - h.col(t_hat), g_bar, rician_weights(cfg));
}

ErrorEventMoments moments_rpm(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                              int t, int m, int m_hat) {
  check_index(t, h.cols(), "t");
  check_index(m, cfg.m_rpm, "m");
  check_index(m_hat, cfg.m_rpm, "m_hat");
  if (m == m_hat) throw std::invalid_argument("moments_rpm: m == m_hat is not an error event");
  const CVector d = h.col(t) * (unit(m, cfg.m_rpm) - unit(m_hat, cfg.m_rpm));
  return event_moments(d, g_bar, rician_weights(cfg));
}

ErrorEventMoments moments_joint(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                                int t, int t_hat, int m, int m_hat) {
  check_index(t, h.cols(), "t");
  check_index(t_hat, h.cols(), "t_hat");
  check_index(m, cfg.m_rpm, "m");
  check_index(m_hat, cfg.m_rpm, "m_hat");
  if (t == t_hat || m == m_hat) {
    throw std::invalid_argument("moments_joint: needs t != t_hat and m != m_hat");
  }
  const CVector d = h.col(t) * unit(m, cfg.m_rpm) - h.col(t_hat) * unit(m_hat, cfg.m_rpm);
  return event_moments(d, g_bar, rician_weights(cfg));
}

double ncx2_pdf(double x, const ErrorEventMoments& mom) {
  if (!(x > 0.0)) throw std::domain_error("ncx2_pdf: x must be positive");
  if (!(mom.sigma_sq > 0.0)) throw std::domain_error("ncx2_pdf: sigma_sq must be positive");
  const double two_var = 2.0 * mom.sigma_sq;
  const int order = mom.n_r - 1;
  if (mom.s_sq == 0.0) {
    // Gamma density, shape n_r, scale 2 sigma^2.
    return std::exp(order * std::log(x) - x / two_var - std::lgamma(mom.n_r) -
                    mom.n_r * std::log(two_var));
  }
  const double s = std::sqrt(mom.s_sq);
  const double z = std::sqrt(x) * s / mom.sigma_sq;
  // exp(-(x + s^2)/(2 sigma^2)) I(z) = exp(-(sqrt(x) - s)^2 / (2 sigma^2)) [exp(-z) I(z)].
  const double diff = std::sqrt(x) - s;
  const double log_f = -std::log(two_var) + 0.5 * order * std::log(x / mom.s_sq) -
                       diff * diff / two_var + log_bessel_i_scaled(order, z);
  return std::exp(log_f);
}

double laplace(const ErrorEventMoments& mom, double a) {
  const double denom = 1.0 + 2.0 * a * mom.sigma_sq;
  if (!(denom > 0.0) || std::isnan(a)) {
    throw std::domain_error("laplace: argument outside the region of convergence");
  }
  if (a == 0.0) return 1.0;
  return std::exp(-mom.n_r * std::log1p(2.0 * a * mom.sigma_sq) - a * mom.s_sq / denom);
}

}  // namespace irs
