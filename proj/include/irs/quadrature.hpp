#pragma once

#include <vector>

namespace irs {

/// Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomials of
/// degree <= 2*order - 1.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] int order() const { return static_cast<int>(nodes.size()); }

  /// Integral of f over [a, b].
  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
    return half * sum;
  }
};

GaussLegendreRule make_gauss_legendre(int order);

/// Shared, lazily built rule. Thread-safe; the reference stays valid for the
/// life of the program.
const GaussLegendreRule& gauss_legendre(int order);

}  // namespace irs
