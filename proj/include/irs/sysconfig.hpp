#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace irs {

/// Every physical and dimensional parameter of one scenario.
///
/// Distances are in km, angles in radians. Noise power is one per receive
/// antenna, so a point of `snr_grid_db` is 10*log10(P_s).
struct SystemConfig {
  int n_t = 2;     ///< BS transmit antennas (power of two)
  int n_r = 1;     ///< UT receive antennas
  int n_x = 4;     ///< IRS elements along x
  int n_y = 4;     ///< IRS elements along y
  int m_rpm = 2;   ///< reflection phase constellation size (power of two)

  double d_t = 1.0;  ///< BS to IRS distance
  double d_r = 1.0;  ///< IRS to UT distance
  double d_0 = 1.0;  ///< reference distance of rho_0

  double eta = 2.3;    ///< path-loss exponent
  double rho_0 = 1.0;  ///< path loss at d_0
  double k_r = 2.0;    ///< Rician K-factor of the IRS to UT link; +inf is pure LoS

  double kappa_over_lambda = 0.5;  ///< IRS element spacing in wavelengths
  double delta_over_lambda = 0.5;  ///< BS (and UT) antenna spacing in wavelengths

  // Arrival at the IRS and departure from the BS.
  double phi_a = 0.7;
  double phi_e = 1.1;
  double phi_d = 0.5235987755982988;
  // Departure from the IRS and arrival at the UT.
  double psi_a = 2.1;
  double psi_e = 0.4;
  double psi_d = 0.9;

  std::vector<double> snr_grid_db;
  std::uint64_t seed = 1;
  std::int64_t trials = 100000;

  [[nodiscard]] int irs_elements() const { return n_x * n_y; }
  [[nodiscard]] int bits_bs() const;
  [[nodiscard]] int bits_irs() const;
  [[nodiscard]] int bits_per_use() const { return bits_bs() + bits_irs(); }
  [[nodiscard]] int hypotheses() const { return n_t * m_rpm; }

  /// BS to IRS path loss, nu.
  [[nodiscard]] double nu_t() const;
  /// IRS to UT path loss, nu_r.
  [[nodiscard]] double nu_r() const;
};

/// rho_0 * d^-eta. Throws std::domain_error unless all inputs are > 0.
double path_loss(double rho_0, double d, double eta);

/// Returns `cfg` unchanged when every invariant holds, otherwise throws
/// ConfigError naming the first offending field.
SystemConfig validate(const SystemConfig& cfg);

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated keys
/// are errors. Fields that are absent keep their defaults. The result is
/// validated.
///
/// `snr_grid_db` accepts either a comma separated list or `start:step:stop`
/// (inclusive of stop when it lies on the grid).
SystemConfig parse_config(std::istream& in);
SystemConfig load_config(const std::filesystem::path& path);

/// Canonical key/value rendering of every field, in declaration order.
/// Feeding the joined lines back to parse_config reproduces `cfg` exactly.
std::vector<std::pair<std::string, std::string>> config_entries(const SystemConfig& cfg);

/// Shortest round-trip decimal form; used for config snapshots and CSV.
std::string format_number(double value);

}  // namespace irs
