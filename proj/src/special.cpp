#include "irs/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace irs {

namespace {

// Hankel expansion of exp(-z) I_n(z); used once z dominates n^2.
bool use_asymptotic(int n, double z) {
  const double nn = static_cast<double>(n) * n;
  return z > 50.0 && z > 2.0 * nn;
}

double asymptotic_log_scaled(int n, double z) {
  const double mu = 4.0 * static_cast<double>(n) * n;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (8.0 * k * z);
    if (std::abs(next) >= std::abs(term)) break;  // series started to diverge
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::log(sum) - 0.5 * std::log(2.0 * std::numbers::pi * z);
}

// Power series sum_k (z/2)^(2k+n) / (k! (k+n)!), accumulated as a running
// log-sum-exp so neither the terms nor exp(-z) can overflow or underflow.
double series_log_scaled(int n, double z) {
  const double log_half_z = std::log(0.5 * z);
  double log_term = n * log_half_z - std::lgamma(n + 1.0);
  double log_max = log_term;
  double rel_sum = 1.0;  // sum of exp(log_term_k - log_max)
  for (int k = 0;; ++k) {
    log_term += 2.0 * log_half_z - std::log(k + 1.0) - std::log(k + 1.0 + n);
    if (log_term > log_max) {
      rel_sum = rel_sum * std::exp(log_max - log_term) + 1.0;
      log_max = log_term;
    } else {
      const double r = std::exp(log_term - log_max);
      rel_sum += r;
      if (r < 1e-18 * rel_sum && k + 1 > 0.5 * z) break;
    }
    if (k > 100000) break;
  }
  return log_max + std::log(rel_sum) - z;
}

double log_scaled(int order, double z) {
  if (order < 0) throw std::domain_error("bessel_i: order must be non-negative");
  if (!(z >= 0.0)) throw std::domain_error("bessel_i: argument must be non-negative");
  if (z == 0.0) return order == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (std::isinf(z)) return -0.5 * std::log(2.0 * std::numbers::pi * z);
  return use_asymptotic(order, z) ? asymptotic_log_scaled(order, z)
                                  : series_log_scaled(order, z);
}

}  // namespace

double bessel_i_scaled(int order, double z) { return std::exp(log_scaled(order, z)); }

double log_bessel_i_scaled(int order, double z) { return log_scaled(order, z); }

double log_bessel_i(int order, double z) { return log_scaled(order, z) + z; }

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace irs
