#include "irs/report.hpp"

#include <ctime>
#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace irs {

namespace {

std::string num(double v) { return format_number(v); }

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

std::string aber_csv(const std::vector<SweepRecord>& rows) {
  std::string out = "snr_db,aber_analytical,aber_sim,aber_stderr,trials\n";
  for (const auto& r : rows) {
    out += num(r.snr_db) + ',' + num(r.aber_analytical) + ',' + num(r.aber_sim) + ',' +
           num(r.aber_stderr) + ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::string capacity_csv(const std::vector<SweepRecord>& rows) {
  std::string out = "snr_db,cap_closed,cap_sim,cap_stderr,samples\n";
  for (const auto& r : rows) {
    out += num(r.snr_db) + ',' + num(r.cap_closed) + ',' + num(r.cap_sim) + ',' +
           num(r.cap_stderr) + ',' + std::to_string(r.trials) + '\n';
  }
  return out;
}

std::vector<PepRow> pep_table(const SystemConfig& cfg, TransformConvention conv) {
  const CMatrix h = build_h(cfg);
  const CMatrix g_bar = build_g_bar(cfg);
  std::vector<PepRow> rows;
  for (const double snr : cfg.snr_grid_db) {
    const double p_s = db_to_linear(snr);
    const auto add = [&](const char* kind, int t, int t_hat, int m, int m_hat,
                         const ErrorEventMoments& mom) {
      rows.push_back({snr, kind, t + 1, t_hat + 1, m + 1, m_hat + 1, mom,
                      pep_of_event(mom, p_s, conv)});
    };
    for (int t = 0; t < cfg.n_t; ++t) {
      for (int t_hat = 0; t_hat < cfg.n_t; ++t_hat) {
        if (t != t_hat) add("ssk", t, t_hat, 0, 0, moments_ssk(h, g_bar, cfg, t, t_hat));
      }
    }
    for (int t = 0; t < cfg.n_t; ++t) {
      for (int m = 0; m < cfg.m_rpm; ++m) {
        for (int m_hat = 0; m_hat < cfg.m_rpm; ++m_hat) {
          if (m != m_hat) add("rpm", t, t, m, m_hat, moments_rpm(h, g_bar, cfg, t, m, m_hat));
        }
      }
    }
    for (int t = 0; t < cfg.n_t; ++t) {
      for (int t_hat = 0; t_hat < cfg.n_t; ++t_hat) {
        if (t == t_hat) continue;
        for (int m = 0; m < cfg.m_rpm; ++m) {
          for (int m_hat = 0; m_hat < cfg.m_rpm; ++m_hat) {
            if (m == m_hat) continue;
            add("joint", t, t_hat, m, m_hat, moments_joint(h, g_bar, cfg, t, t_hat, m, m_hat));
          }
        }
      }
    }
  }
  return rows;
}

std::string pep_csv(const std::vector<PepRow>& rows) {
  std::string out = "snr_db,kind,t,t_hat,m,m_hat,s_sq,sigma_sq,pep_exact,pep_chiani\n";
  for (const auto& r : rows) {
    out += num(r.snr_db) + ',' + r.kind + ',' + std::to_string(r.t) + ',' +
           std::to_string(r.t_hat) + ',' + std::to_string(r.m) + ',' + std::to_string(r.m_hat) +
           ',' + num(r.moments.s_sq) + ',' + num(r.moments.sigma_sq) + ',' + num(r.pep.exact) +
           ',' + num(r.pep.chiani) + '\n';
  }
  return out;
}

std::string manifest_json(const SystemConfig& cfg, const RunInfo& info) {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config_entries(cfg)) config[key] = value;
  nlohmann::ordered_json doc;
  doc["tool"] = "irs-sskrpm";
  doc["version"] = kToolVersion;
  doc["command"] = info.command;
  doc["mode"] = info.mode;
  doc["exact_pep"] = info.exact_pep;
  doc["paper_literal_args"] = info.paper_literal_args;
  doc["seed"] = std::to_string(cfg.seed);
  doc["trials"] = cfg.trials;
  doc["started_utc"] = iso_utc(info.started);
  doc["config"] = config;
  return doc.dump(2) + "\n";
}

}  // namespace irs
