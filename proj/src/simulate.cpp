#include "irs/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "irs/errors.hpp"

namespace irs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs fn(chunk) for chunk in [first, last) on up to `workers` threads.
template <typename Fn>
void parallel_chunks(std::int64_t first, std::int64_t last, int workers, Fn&& fn) {
  const std::int64_t count = last - first;
  if (count <= 0) return;
  const int threads = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), count));
  if (threads == 1) {
    for (std::int64_t c = first; c < last; ++c) fn(c);
    return;
  }
  std::atomic<std::int64_t> next{first};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        try {
          for (std::int64_t c = next++; c < last; c = next++) fn(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = last;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

int resolve_workers(int requested) { return requested > 0 ? requested : default_worker_count(); }

std::int64_t chunk_count(std::int64_t trials) { return (trials + kTrialChunk - 1) / kTrialChunk; }

// Per-thread scratch for one chunk of trials.
struct TrialScratch {
  CMatrix g;
  Signatures sig;
  CVector y;
};

struct LinkSetup {
  CMatrix h;
  CMatrix g_bar;
  RicianWeights weights;

  explicit LinkSetup(const SystemConfig& cfg)
      : h(build_h(cfg)), g_bar(build_g_bar(cfg)), weights(rician_weights(cfg)) {}

  void draw(CounterRng& rng, int m_rpm, TrialScratch& s) const {
    sample_g_into(weights, g_bar, rng, s.g);
    s.sig.base.noalias() = s.g.adjoint() * h;
    if (static_cast<int>(s.sig.rotation.size()) != m_rpm) {
      s.sig.rotation.resize(m_rpm);
      for (int m = 0; m < m_rpm; ++m) s.sig.rotation[m] = std::polar(1.0, rpm_phase(m, m_rpm));
    }
  }
};

void check_trials(std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("simulation needs at least one trial");
}

}  // namespace

int default_worker_count() {
  if (const char* env = std::getenv("IRS_SSKRPM_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 1024) return static_cast<int>(n);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

BerEstimate simulate_ber(const SystemConfig& cfg, double p_s, std::int64_t trials,
                         std::uint64_t seed, const SimOptions& opts) {
  check_trials(trials);
  if (!(p_s >= 0.0)) throw std::domain_error("simulate_ber: negative power");
  const int bits = cfg.bits_per_use();
  if (bits == 0) throw ConfigError("nothing to transmit: n_t = m_rpm = 1 carries no bits");

  const LinkSetup link(cfg);
  const BitMapper mapper(cfg.n_t, cfg.m_rpm);
  const double amp = std::sqrt(p_s);
  const int workers = resolve_workers(opts.workers);
  const std::int64_t chunks = chunk_count(trials);
  std::vector<std::int64_t> errors(static_cast<std::size_t>(chunks), 0);

  const auto run_chunk = [&](std::int64_t chunk) {
    TrialScratch s;
    const std::int64_t begin = chunk * kTrialChunk;
    const std::int64_t end = std::min(trials, begin + kTrialChunk);
    std::int64_t count = 0;
    for (std::int64_t trial = begin; trial < end; ++trial) {
      CounterRng rng(seed, StreamPurpose::kBer, opts.point, static_cast<std::uint64_t>(trial));
      const SymbolPair sent = mapper.from_label(rng.bits(bits));
      link.draw(rng, cfg.m_rpm, s);
      s.y = (amp * s.sig.rotation[sent.phase]) * s.sig.base.col(sent.antenna);
      for (Eigen::Index r = 0; r < s.y.size(); ++r) s.y(r) += rng.complex_normal();
      const SymbolPair detected = ml_detect(s.sig, s.y, mapper, p_s);
      count += BitMapper::hamming(sent, detected);
    }
    errors[static_cast<std::size_t>(chunk)] = count;
  };

  std::int64_t done_chunks = 0;
  std::int64_t total_errors = 0;
  const std::int64_t batch_chunks = opts.relative_precision ? kPrecisionBatch / kTrialChunk : chunks;
  while (done_chunks < chunks) {
    const std::int64_t stop = std::min(chunks, done_chunks + batch_chunks);
    parallel_chunks(done_chunks, stop, workers, run_chunk);
    for (std::int64_t c = done_chunks; c < stop; ++c) total_errors += errors[c];
    done_chunks = stop;
    if (opts.relative_precision && done_chunks < chunks) {
      const double n_bits = static_cast<double>(std::min(trials, done_chunks * kTrialChunk)) * bits;
      const double p = total_errors / n_bits;
      if (p > 0.0 && std::sqrt(p * (1.0 - p) / n_bits) < opts.target_rel_error * p) break;
    }
  }

  BerEstimate est;
  est.trials = std::min(trials, done_chunks * kTrialChunk);
  est.bits = est.trials * bits;
  est.bit_errors = total_errors;
  est.aber = static_cast<double>(total_errors) / static_cast<double>(est.bits);
  est.std_error = std::sqrt(est.aber * (1.0 - est.aber) / static_cast<double>(est.bits));
  return est;
}

CapacityEstimate simulate_capacity(const SystemConfig& cfg, double p_s,
                                   std::int64_t channel_samples, std::uint64_t seed,
                                   const SimOptions& opts) {
  check_trials(channel_samples);
  if (!(p_s >= 0.0)) throw std::domain_error("simulate_capacity: negative power");
  const LinkSetup link(cfg);
  const int workers = resolve_workers(opts.workers);
  const std::int64_t chunks = chunk_count(channel_samples);
  std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
  std::vector<double> squares(static_cast<std::size_t>(chunks), 0.0);

  parallel_chunks(0, chunks, workers, [&](std::int64_t chunk) {
    TrialScratch s;
    const std::int64_t begin = chunk * kTrialChunk;
    const std::int64_t end = std::min(channel_samples, begin + kTrialChunk);
    double sum = 0.0, sq = 0.0;
    for (std::int64_t sample = begin; sample < end; ++sample) {
      CounterRng rng(seed, StreamPurpose::kCapacity, opts.point,
                     static_cast<std::uint64_t>(sample));
      link.draw(rng, cfg.m_rpm, s);
      double total = 0.0;
      for (int m = 0; m < cfg.m_rpm; ++m) {
        for (int m_hat = 0; m_hat < cfg.m_rpm; ++m_hat) {
          if (m_hat == m) continue;
          for (int t = 0; t < cfg.n_t; ++t) {
            for (int t_hat = 0; t_hat < cfg.n_t; ++t_hat) {
              if (t_hat == t) continue;
              const double xi = (s.sig.lambda(t, m) - s.sig.lambda(t_hat, m_hat)).squaredNorm();
              total += std::exp(-0.5 * p_s * xi);
            }
          }
        }
      }
      sum += total;
      sq += total * total;
    }
    sums[static_cast<std::size_t>(chunk)] = sum;
    squares[static_cast<std::size_t>(chunk)] = sq;
  });

  double sum = 0.0, sq = 0.0;
  for (std::int64_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sq += squares[c];
  }
  const double n = static_cast<double>(channel_samples);
  const double mean = sum / n;
  const double var = channel_samples > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1.0)) : 0.0;
  const double levels = cfg.hypotheses();

  CapacityEstimate est;
  est.samples = channel_samples;
  est.capacity = 2.0 * std::log2(levels) - std::log2(levels + mean);
  est.std_error = std::sqrt(var / n) / ((levels + mean) * std::numbers::ln2);
  return est;
}

PairwiseEstimate simulate_pairwise(const SystemConfig& cfg, double p_s, const SymbolPair& sent,
                                   const SymbolPair& rival, std::int64_t trials,
                                   std::uint64_t seed, const SimOptions& opts) {
  check_trials(trials);
  if (!(p_s >= 0.0)) throw std::domain_error("simulate_pairwise: negative power");
  const LinkSetup link(cfg);
  const double amp = std::sqrt(p_s);
  const int workers = resolve_workers(opts.workers);
  const std::int64_t chunks = chunk_count(trials);
  std::vector<std::int64_t> errors(static_cast<std::size_t>(chunks), 0);

  parallel_chunks(0, chunks, workers, [&](std::int64_t chunk) {
    TrialScratch s;
    const std::int64_t begin = chunk * kTrialChunk;
    const std::int64_t end = std::min(trials, begin + kTrialChunk);
    std::int64_t count = 0;
    for (std::int64_t trial = begin; trial < end; ++trial) {
      CounterRng rng(seed, StreamPurpose::kPairwise, opts.point, static_cast<std::uint64_t>(trial));
      link.draw(rng, cfg.m_rpm, s);
      const CVector a = amp * s.sig.lambda(sent.antenna, sent.phase);
      const CVector b = amp * s.sig.lambda(rival.antenna, rival.phase);
      s.y = a;
      for (Eigen::Index r = 0; r < s.y.size(); ++r) s.y(r) += rng.complex_normal();
      if ((s.y - b).squaredNorm() < (s.y - a).squaredNorm()) ++count;
    }
    errors[static_cast<std::size_t>(chunk)] = count;
  });

  PairwiseEstimate est;
  est.trials = trials;
  for (const auto e : errors) est.errors += e;
  est.rate = static_cast<double>(est.errors) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(trials));
  return est;
}

std::vector<SweepRecord> run_sweep(const SystemConfig& cfg, const SweepOptions& opts) {
  std::vector<SweepRecord> rows;
  rows.reserve(cfg.snr_grid_db.size());
  const CMatrix h = build_h(cfg);
  const CMatrix g_bar = build_g_bar(cfg);
  SimOptions sim;
  sim.workers = opts.workers;

  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
    const double snr = cfg.snr_grid_db[i];
    const double p_s = db_to_linear(snr);
    sim.point = static_cast<std::uint32_t>(i);
    SweepRecord row{snr, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, 0};
    try {
      if (opts.aber && opts.analytic) {
        row.aber_analytical = aber_union(h, g_bar, cfg, p_s, opts.aber_options);
      }
      if (opts.aber && opts.simulate) {
        const BerEstimate ber = simulate_ber(cfg, p_s, cfg.trials, cfg.seed, sim);
        row.aber_sim = ber.aber;
        row.aber_stderr = ber.std_error;
        row.trials = ber.trials;
      }
      if (opts.capacity && opts.analytic) row.cap_closed = capacity_closed(h, g_bar, cfg, p_s);
      if (opts.capacity && opts.simulate) {
        const CapacityEstimate cap = simulate_capacity(cfg, p_s, cfg.trials, cfg.seed, sim);
        row.cap_sim = cap.capacity;
        row.cap_stderr = cap.std_error;
        row.trials = cap.samples;
      }
    } catch (const NumericalError& e) {
      throw NumericalError("sweep point snr_db=" + format_number(snr) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("sweep point snr_db=" + format_number(snr) + ": " + e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace irs
