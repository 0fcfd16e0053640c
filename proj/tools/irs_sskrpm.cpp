// Command-line front end: ABER, capacity and PEP sweeps as CSV.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "irs/errors.hpp"
#include "irs/report.hpp"
#include "irs/simulate.hpp"
#include "irs/sysconfig.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CommonArgs {
  std::string config;
  std::string mode = "analytic";
  bool exact_pep = false;
  bool paper_literal = false;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool sweep) {
  cmd->add_option("--config", args.config, "Scenario file (key=value)")->required();
  if (!sweep) return;
  cmd->add_option("--mode", args.mode, "analytic, sim or both")
      ->check(CLI::IsMember({"analytic", "sim", "both"}));
  cmd->add_flag("--exact-pep", args.exact_pep, "Union bound with Craig-integral PEPs");
  cmd->add_flag("--paper-literal-args", args.paper_literal,
                "Evaluate PEP transforms at the printed (doubled) arguments");
  cmd->add_option("--trials", args.trials, "Monte-Carlo trials per SNR point");
  cmd->add_option("--seed", args.seed, "Master RNG seed");
  cmd->add_option("--out", args.out, "CSV output path (a .manifest.json sidecar is written next to it)");
}

irs::SystemConfig load(const CommonArgs& args) {
  irs::SystemConfig cfg = irs::load_config(args.config);
  if (args.trials) cfg.trials = *args.trials;
  if (args.seed) cfg.seed = *args.seed;
  return irs::validate(cfg);
}

void emit(const CommonArgs& args, const irs::SystemConfig& cfg, const irs::RunInfo& info,
          const std::string& csv) {
  if (args.out.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream file(args.out, std::ios::binary);
  if (!file) throw irs::ConfigError("cannot write " + args.out);
  file << csv;
  std::ofstream manifest(args.out + ".manifest.json", std::ios::binary);
  if (!manifest) throw irs::ConfigError("cannot write " + args.out + ".manifest.json");
  manifest << irs::manifest_json(cfg, info);
}

irs::SweepOptions sweep_options(const CommonArgs& args) {
  irs::SweepOptions opts;
  opts.analytic = args.mode != "sim";
  opts.simulate = args.mode != "analytic";
  opts.aber_options.exact_pep = args.exact_pep;
  opts.aber_options.convention = args.paper_literal ? irs::TransformConvention::kPaperLiteral
                                                    : irs::TransformConvention::kConsistent;
  return opts;
}

irs::RunInfo run_info(const std::string& command, const CommonArgs& args) {
  return {command, args.mode, args.exact_pep, args.paper_literal,
          std::chrono::system_clock::now()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level analysis and simulation of IRS-assisted SSK with reflection phase modulation"};
  app.require_subcommand(1);

  CommonArgs aber_args, cap_args, pep_args, validate_args;
  auto* aber = app.add_subcommand("aber", "ABER sweep (union bound and/or Monte-Carlo)");
  auto* capacity = app.add_subcommand("capacity", "Ergodic capacity sweep");
  auto* pep = app.add_subcommand("pep", "Per-event PEP table");
  auto* check = app.add_subcommand("validate", "Check a scenario file");
  add_common(aber, aber_args, true);
  add_common(capacity, cap_args, true);
  add_common(pep, pep_args, true);
  add_common(check, validate_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitConfig;
  }

  try {
    if (*check) {
      const irs::SystemConfig cfg = irs::load_config(validate_args.config);
      std::cout << "ok: N=" << cfg.irs_elements() << " b=" << cfg.bits_per_use()
                << " nu=" << irs::format_number(cfg.nu_t())
                << " nu_r=" << irs::format_number(cfg.nu_r())
                << " points=" << cfg.snr_grid_db.size() << "\n";
      return kExitOk;
    }
    if (*aber) {
      const irs::SystemConfig cfg = load(aber_args);
      irs::SweepOptions opts = sweep_options(aber_args);
      opts.capacity = false;
      emit(aber_args, cfg, run_info("aber", aber_args), irs::aber_csv(irs::run_sweep(cfg, opts)));
      return kExitOk;
    }
    if (*capacity) {
      const irs::SystemConfig cfg = load(cap_args);
      irs::SweepOptions opts = sweep_options(cap_args);
      opts.aber = false;
      emit(cap_args, cfg, run_info("capacity", cap_args),
           irs::capacity_csv(irs::run_sweep(cfg, opts)));
      return kExitOk;
    }
    if (*pep) {
      const irs::SystemConfig cfg = load(pep_args);
      const auto conv = pep_args.paper_literal ? irs::TransformConvention::kPaperLiteral
                                               : irs::TransformConvention::kConsistent;
      emit(pep_args, cfg, run_info("pep", pep_args), irs::pep_csv(irs::pep_table(cfg, conv)));
      return kExitOk;
    }
  } catch (const irs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const irs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
