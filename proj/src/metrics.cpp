#include "irs/metrics.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "irs/errors.hpp"
#include "irs/quadrature.hpp"

namespace irs {

namespace {

// Scale of the transform argument relative to P_s.
double craig_scale(TransformConvention conv) {
  return conv == TransformConvention::kConsistent ? 0.25 : 0.5;
}

double craig_at_order(const ErrorEventMoments& mom, double a0, int order) {
  const auto& rule = gauss_legendre(order);
  const double integral = rule.integrate(
      [&](double omega) {
        const double s = std::sin(omega);
        return laplace(mom, a0 / (s * s));
      },
      0.0, 0.5 * std::numbers::pi);
  return integral / std::numbers::pi;
}

void check_power(double p_s) {
  if (!(p_s >= 0.0)) throw std::domain_error("PEP: transmit power must be non-negative");
}

}  // namespace

double pep_exact(const ErrorEventMoments& mom, double p_s, TransformConvention conv) {
  check_power(p_s);
  if (p_s == 0.0) return 0.5;
  const double a0 = craig_scale(conv) * p_s;
  double previous = craig_at_order(mom, a0, kCraigBaseOrder);
  for (int order = 2 * kCraigBaseOrder; order <= kCraigMaxOrder; order *= 2) {
    const double current = craig_at_order(mom, a0, order);
    const double spread = std::abs(current - previous);
    if (spread <= kCraigRelTol * std::abs(current) || current < 1e-300) return current;
    previous = current;
  }
  throw NumericalError("Craig quadrature did not converge (P_s=" + std::to_string(p_s) +
                       ", s^2=" + std::to_string(mom.s_sq) +
                       ", sigma^2=" + std::to_string(mom.sigma_sq) + ")");
}

double pep_chiani(const ErrorEventMoments& mom, double p_s, TransformConvention conv) {
  check_power(p_s);
  const double a1 = conv == TransformConvention::kConsistent ? p_s / 4.0 : p_s / 2.0;
  const double a2 = conv == TransformConvention::kConsistent ? p_s / 3.0 : 2.0 * p_s / 3.0;
  return laplace(mom, a1) / 12.0 + laplace(mom, a2) / 4.0;
}

PepValue pep_of_event(const ErrorEventMoments& mom, double p_s, TransformConvention conv) {
  return {pep_exact(mom, p_s, conv), pep_chiani(mom, p_s, conv)};
}

PepValue pep_ssk(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int t,
                 int t_hat, double p_s, TransformConvention conv) {
  return pep_of_event(moments_ssk(h, g_bar, cfg, t, t_hat), p_s, conv);
}

PepValue pep_rpm(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int m,
                 int m_hat, double p_s, TransformConvention conv) {
  PepValue avg;
  const int n_t = static_cast<int>(h.cols());
  for (int t = 0; t < n_t; ++t) {
    const PepValue v = pep_of_event(moments_rpm(h, g_bar, cfg, t, m, m_hat), p_s, conv);
    avg.exact += v.exact;
    avg.chiani += v.chiani;
  }
  avg.exact /= n_t;
  avg.chiani /= n_t;
  return avg;
}

PepValue pep_joint(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int t,
                   int t_hat, int m, int m_hat, double p_s, TransformConvention conv) {
  return pep_of_event(moments_joint(h, g_bar, cfg, t, t_hat, m, m_hat), p_s, conv);
}

AberTerms aber_terms(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, double p_s,
                     const AberOptions& opts) {
  check_power(p_s);
  AberTerms terms;
  const int bits = cfg.bits_per_use();
  if (bits == 0) return terms;
  const auto pick = [&](const ErrorEventMoments& mom) {
    return opts.exact_pep ? pep_exact(mom, p_s, opts.convention)
                          : pep_chiani(mom, p_s, opts.convention);
  };
  const auto hamming = [](int a, int b) { return std::popcount(static_cast<unsigned>(a ^ b)); };
  const int n_t = cfg.n_t, m_rpm = cfg.m_rpm;

  // D_H(t, t) = 0, so only t_hat != t contributes.
  for (int t = 0; t < n_t; ++t) {
    for (int t_hat = 0; t_hat < n_t; ++t_hat) {
      if (t_hat == t) continue;
      terms.ssk += hamming(t, t_hat) * pick(moments_ssk(h, g_bar, cfg, t, t_hat));
    }
  }
  terms.ssk /= static_cast<double>(n_t) * bits;

  for (int m = 0; m < m_rpm; ++m) {
    for (int m_hat = 0; m_hat < m_rpm; ++m_hat) {
      if (m_hat == m) continue;
      double avg = 0.0;
      for (int t = 0; t < n_t; ++t) avg += pick(moments_rpm(h, g_bar, cfg, t, m, m_hat));
      terms.rpm += hamming(m, m_hat) * avg / n_t;
    }
  }
  terms.rpm /= static_cast<double>(m_rpm) * bits;

  for (int m = 0; m < m_rpm; ++m) {
    for (int m_hat = 0; m_hat < m_rpm; ++m_hat) {
      if (m_hat == m) continue;
      for (int t = 0; t < n_t; ++t) {
        for (int t_hat = 0; t_hat < n_t; ++t_hat) {
          if (t_hat == t) continue;
          const int weight = hamming(t, t_hat) + hamming(m, m_hat);
          terms.joint += weight * pick(moments_joint(h, g_bar, cfg, t, t_hat, m, m_hat));
        }
      }
    }
  }
  terms.joint /= static_cast<double>(m_rpm) * n_t * bits;
  return terms;
}

double aber_union(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, double p_s,
                  const AberOptions& opts) {
  return aber_terms(h, g_bar, cfg, p_s, opts).total();
}

double diversity_slope(std::span<const double> snr_db, std::span<const double> aber) {
  return diversity_slope(snr_db, aber, -std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity());
}

double diversity_slope(std::span<const double> snr_db, std::span<const double> aber,
                       double lo_db, double hi_db) {
  if (snr_db.size() != aber.size()) throw std::invalid_argument("diversity_slope: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < snr_db.size(); ++i) {
    if (snr_db[i] < lo_db || snr_db[i] > hi_db) continue;
    if (!(aber[i] > 0.0) || !std::isfinite(aber[i])) continue;
    xs.push_back(snr_db[i] / 10.0);
    ys.push_back(std::log10(aber[i]));
  }
  if (xs.size() < 2) throw std::invalid_argument("diversity_slope: fewer than 2 usable points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("diversity_slope: all points share one SNR");
  return -sxy / sxx;
}

double capacity_closed(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                       double p_s) {
  check_power(p_s);
  const double levels = cfg.hypotheses();
  double sum = 0.0;
  for (int m = 0; m < cfg.m_rpm; ++m) {
    for (int m_hat = 0; m_hat < cfg.m_rpm; ++m_hat) {
      if (m_hat == m) continue;
      for (int t = 0; t < cfg.n_t; ++t) {
        for (int t_hat = 0; t_hat < cfg.n_t; ++t_hat) {
          if (t_hat == t) continue;
          sum += laplace(moments_joint(h, g_bar, cfg, t, t_hat, m, m_hat), 0.5 * p_s);
        }
      }
    }
  }
  return 2.0 * std::log2(levels) - std::log2(levels + sum);
}

double crossing_snr_db(std::span<const double> snr_db, std::span<const double> values,
                       double level, bool log_scale) {
  if (snr_db.size() != values.size()) throw std::invalid_argument("crossing_snr_db: size mismatch");
  const auto f = [&](double v) { return log_scale ? std::log10(v) : v; };
  const double target = f(level);
  for (std::size_t i = 1; i < snr_db.size(); ++i) {
    const double a = f(values[i - 1]) - target;
    const double b = f(values[i]) - target;
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0) return snr_db[i - 1];
    if ((a < 0.0) != (b < 0.0) || b == 0.0) {
      return snr_db[i - 1] + (snr_db[i] - snr_db[i - 1]) * a / (a - b);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace irs
