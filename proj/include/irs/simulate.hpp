#pragma once

#include <cstdint>
#include <vector>

#include "irs/airlink.hpp"
#include "irs/metrics.hpp"
#include "irs/sysconfig.hpp"

namespace irs {

/// Worker count used when SimOptions::workers is 0: IRS_SSKRPM_THREADS when
/// it holds a positive integer, otherwise the hardware concurrency.
int default_worker_count();

/// Trials handled by one work item. Fixed, so the partition (and therefore
/// every floating-point reduction) is independent of the worker count.
inline constexpr std::int64_t kTrialChunk = 4096;

struct SimOptions {
  int workers = 0;           ///< 0 selects default_worker_count()
  std::uint32_t point = 0;   ///< sweep point index, part of every RNG stream
  /// Stop early once std_error / aber < target_rel_error (checked every
  /// kPrecisionBatch trials). Off by default.
  bool relative_precision = false;
  double target_rel_error = 0.1;
};

inline constexpr std::int64_t kPrecisionBatch = 16 * kTrialChunk;

struct BerEstimate {
  double aber = 0.0;
  double std_error = 0.0;  ///< sqrt(aber (1 - aber) / bits)
  std::int64_t bit_errors = 0;
  std::int64_t bits = 0;
  std::int64_t trials = 0;
};

/// Monte-Carlo ABER of the exact signal model with ML detection. Each trial
/// draws fresh bits, a fresh G and fresh noise. Throws ConfigError when the
/// scenario carries no bits.
BerEstimate simulate_ber(const SystemConfig& cfg, double p_s, std::int64_t trials,
                         std::uint64_t seed, const SimOptions& opts = {});

struct CapacityEstimate {
  double capacity = 0.0;
  double std_error = 0.0;  ///< delta-method error of the log2 term
  std::int64_t samples = 0;
};

/// Sampled form of the mutual-information expression: each
/// E[exp(-P_s xi / 2)] over m != m_hat, t != t_hat is averaged over channel
/// draws, with xi taken from the signatures of each draw.
CapacityEstimate simulate_capacity(const SystemConfig& cfg, double p_s,
                                   std::int64_t channel_samples, std::uint64_t seed,
                                   const SimOptions& opts = {});

struct PairwiseEstimate {
  double rate = 0.0;
  double std_error = 0.0;
  std::int64_t errors = 0;
  std::int64_t trials = 0;
};

/// Binary test between two hypotheses: `sent` is transmitted and the trial
/// counts an error when the metric of `rival` is strictly smaller.
PairwiseEstimate simulate_pairwise(const SystemConfig& cfg, double p_s, const SymbolPair& sent,
                                   const SymbolPair& rival, std::int64_t trials,
                                   std::uint64_t seed, const SimOptions& opts = {});

/// One row of a sweep. Quantities that were not requested are NaN.
struct SweepRecord {
  double snr_db = 0.0;
  double aber_analytical = 0.0;
  double aber_sim = 0.0;
  double aber_stderr = 0.0;
  double cap_closed = 0.0;
  double cap_sim = 0.0;
  double cap_stderr = 0.0;
  std::int64_t trials = 0;
};

struct SweepOptions {
  bool analytic = true;
  bool simulate = true;
  bool aber = true;
  bool capacity = true;
  AberOptions aber_options{};
  int workers = 0;
};

/// Evaluates every point of cfg.snr_grid_db in order, using cfg.trials and
/// cfg.seed. A failing point aborts with an error naming its SNR.
std::vector<SweepRecord> run_sweep(const SystemConfig& cfg, const SweepOptions& opts = {});

}  // namespace irs
