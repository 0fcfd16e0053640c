#pragma once

#include <cmath>
#include <span>

#include "irs/ncx2.hpp"

namespace irs {

/// How the PEP transforms are evaluated.
///
/// kConsistent evaluates E[Q(sqrt(P_s xi / 2))] exactly: Craig's integrand is
/// E[exp(-P_s xi / (4 sin^2))] and the two-exponential approximation uses
/// arguments P_s/4 and P_s/3. kPaperLiteral doubles every argument (P_s/2 and
/// 2 P_s/3 for the closed form) for side-by-side comparison with the printed
/// expressions.
enum class TransformConvention { kConsistent, kPaperLiteral };

struct PepValue {
  double exact = 0.0;   ///< Craig integral, Gauss-Legendre
  double chiani = 0.0;  ///< (1/12) L(a1) + (1/4) L(a2)
};

/// Lowest Gauss-Legendre order of the Craig integral. Orders double from here
/// until two consecutive results agree to kCraigRelTol, up to kCraigMaxOrder.
inline constexpr int kCraigBaseOrder = 64;
inline constexpr int kCraigMaxOrder = 4096;
inline constexpr double kCraigRelTol = 1e-9;

/// Exact average PEP of one event. Throws NumericalError if the quadrature
/// does not settle and std::domain_error for negative power.
double pep_exact(const ErrorEventMoments& mom, double p_s,
                 TransformConvention conv = TransformConvention::kConsistent);

double pep_chiani(const ErrorEventMoments& mom, double p_s,
                  TransformConvention conv = TransformConvention::kConsistent);

PepValue pep_of_event(const ErrorEventMoments& mom, double p_s,
                      TransformConvention conv = TransformConvention::kConsistent);

/// Antenna-index PEP; identical for every reflection phase.
PepValue pep_ssk(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int t,
                 int t_hat, double p_s, TransformConvention conv = TransformConvention::kConsistent);

/// Phase PEP averaged over the active antenna.
PepValue pep_rpm(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int m,
                 int m_hat, double p_s, TransformConvention conv = TransformConvention::kConsistent);

PepValue pep_joint(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, int t,
                   int t_hat, int m, int m_hat, double p_s,
                   TransformConvention conv = TransformConvention::kConsistent);

struct AberOptions {
  bool exact_pep = false;
  TransformConvention convention = TransformConvention::kConsistent;
};

/// The three Hamming-weighted sums of the union bound.
struct AberTerms {
  double ssk = 0.0;
  double rpm = 0.0;
  double joint = 0.0;

  [[nodiscard]] double total() const { return ssk + rpm + joint; }
};

/// Union bound on the average bit error rate. With zero bits per channel use
/// all sums are empty and the result is 0.
AberTerms aber_terms(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, double p_s,
                     const AberOptions& opts = {});
double aber_union(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg, double p_s,
                  const AberOptions& opts = {});

/// Negated least-squares slope of log10(aber) against snr_db / 10, over the
/// points with aber > 0. Throws std::invalid_argument with fewer than two.
double diversity_slope(std::span<const double> snr_db, std::span<const double> aber);

/// Same, restricted to lo_db <= snr_db <= hi_db.
double diversity_slope(std::span<const double> snr_db, std::span<const double> aber,
                       double lo_db, double hi_db);

/// Closed-form ergodic capacity in bits per channel use:
/// 2 log2(N_t M) - log2(N_t M + sum over m != m_hat, t != t_hat of L_xi(P_s / 2)).
double capacity_closed(const CMatrix& h, const CMatrix& g_bar, const SystemConfig& cfg,
                       double p_s);

/// First SNR at which `values` crosses `level`, by linear interpolation
/// between grid points (in log10 of the values when `log_scale`). NaN when
/// the curve never crosses.
double crossing_snr_db(std::span<const double> snr_db, std::span<const double> values,
                       double level, bool log_scale);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace irs
