#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "irs/metrics.hpp"
#include "irs/simulate.hpp"

namespace irs {

inline constexpr const char* kToolVersion = "1.0.0";

/// CSV bodies. Plain RFC-4180 without quoting: '.' decimal point, shortest
/// round-trip numbers (lowercase 'e' exponents), '\n' line ends, "nan" for
/// quantities that were not computed.
std::string aber_csv(const std::vector<SweepRecord>& rows);
std::string capacity_csv(const std::vector<SweepRecord>& rows);

/// One ordered error event of the PEP table. Indices are one-based here, as
/// in the usual {i_t, phi_m} notation.
struct PepRow {
  double snr_db = 0.0;
  std::string kind;  ///< "ssk", "rpm" or "joint"
  int t = 0, t_hat = 0, m = 0, m_hat = 0;
  ErrorEventMoments moments;
  PepValue pep;
};

/// Every ordered pair of distinct hypotheses at every grid point. Antenna
/// errors are reported for m = m_hat = 1 (they do not depend on m) and phase
/// errors per antenna.
std::vector<PepRow> pep_table(const SystemConfig& cfg, TransformConvention conv);
std::string pep_csv(const std::vector<PepRow>& rows);

struct RunInfo {
  std::string command;
  std::string mode;
  bool exact_pep = false;
  bool paper_literal_args = false;
  std::chrono::system_clock::time_point started;
};

/// JSON sidecar: config snapshot plus everything needed to rerun.
std::string manifest_json(const SystemConfig& cfg, const RunInfo& info);

}  // namespace irs
