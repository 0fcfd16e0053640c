#pragma once

namespace irs {

/// exp(-z) * I_n(z) for integer order n >= 0 and z >= 0.
///
/// Finite for every finite z, so callers can assemble densities in log space
/// without overflowing at large arguments.
double bessel_i_scaled(int order, double z);

/// log(exp(-z) I_n(z)); stays accurate where the scaled value underflows.
double log_bessel_i_scaled(int order, double z);

/// log(I_n(z)); -inf at z = 0 when n > 0.
double log_bessel_i(int order, double z);

/// Gaussian tail Q(x) = P(N(0,1) > x).
double gaussian_q(double x);

}  // namespace irs
