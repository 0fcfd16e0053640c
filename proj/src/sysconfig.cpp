#include "irs/sysconfig.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "irs/errors.hpp"

namespace irs {

namespace {

bool is_power_of_two(int v) { return v > 0 && std::has_single_bit(static_cast<unsigned>(v)); }

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
  Int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(key + ": cannot parse '" + text + "' as an integer");
  }
  return v;
}

std::vector<double> parse_grid(const std::string& key, const std::string& text) {
  std::vector<double> grid;
  if (text.empty()) return grid;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_double(key, trim(item)));
    if (parts.size() != 3 || !(parts[1] > 0.0)) {
      throw ConfigError(key + ": range must be start:step:stop with step > 0");
    }
    const double start = parts[0], step = parts[1], stop = parts[2];
    // Index-based generation keeps the points free of accumulated rounding.
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_double(key, trim(item)));
  return grid;
}

std::string join_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ',';
    out += format_number(grid[i]);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

int SystemConfig::bits_bs() const { return std::countr_zero(static_cast<unsigned>(n_t)); }
int SystemConfig::bits_irs() const { return std::countr_zero(static_cast<unsigned>(m_rpm)); }

double SystemConfig::nu_t() const { return path_loss(rho_0, d_t / d_0, eta); }
double SystemConfig::nu_r() const { return path_loss(rho_0, d_r / d_0, eta); }

double path_loss(double rho_0, double d, double eta) {
  if (!(rho_0 > 0.0) || !(d > 0.0) || !(eta > 0.0)) {
    throw std::domain_error("path_loss: rho_0, d and eta must be positive");
  }
  return rho_0 * std::pow(d, -eta);
}

SystemConfig validate(const SystemConfig& cfg) {
  const auto num = [](double v) { return format_number(v); };
  require(cfg.n_t >= 1, "n_t=" + std::to_string(cfg.n_t) + " must be positive");
  require(is_power_of_two(cfg.n_t), "n_t=" + std::to_string(cfg.n_t) + " not a power of two");
  require(cfg.n_r >= 1, "n_r=" + std::to_string(cfg.n_r) + " must be positive");
  require(cfg.n_x >= 1, "n_x=" + std::to_string(cfg.n_x) + " must be positive");
  require(cfg.n_y >= 1, "n_y=" + std::to_string(cfg.n_y) + " must be positive");
  require(cfg.m_rpm >= 1, "m_rpm=" + std::to_string(cfg.m_rpm) + " must be positive");
  require(is_power_of_two(cfg.m_rpm),
          "m_rpm=" + std::to_string(cfg.m_rpm) + " not a power of two");
  require(cfg.d_t > 0.0 && std::isfinite(cfg.d_t), "d_t=" + num(cfg.d_t) + " must be positive");
  require(cfg.d_r > 0.0 && std::isfinite(cfg.d_r), "d_r=" + num(cfg.d_r) + " must be positive");
  require(cfg.d_0 > 0.0 && std::isfinite(cfg.d_0), "d_0=" + num(cfg.d_0) + " must be positive");
  require(cfg.eta > 0.0 && std::isfinite(cfg.eta), "eta=" + num(cfg.eta) + " must be positive");
  require(cfg.rho_0 > 0.0 && std::isfinite(cfg.rho_0),
          "rho_0=" + num(cfg.rho_0) + " must be positive");
  require(cfg.k_r >= 0.0, "k_r=" + num(cfg.k_r) + " must be non-negative");
  require(cfg.kappa_over_lambda > 0.0 && std::isfinite(cfg.kappa_over_lambda),
          "kappa_over_lambda=" + num(cfg.kappa_over_lambda) + " must be positive");
  require(cfg.delta_over_lambda > 0.0 && std::isfinite(cfg.delta_over_lambda),
          "delta_over_lambda=" + num(cfg.delta_over_lambda) + " must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  require(cfg.phi_a > 0.0 && cfg.phi_a < two_pi, "phi_a=" + num(cfg.phi_a) + " outside (0, 2pi)");
  require(cfg.phi_e > 0.0 && cfg.phi_e < two_pi, "phi_e=" + num(cfg.phi_e) + " outside (0, 2pi)");
  for (const double angle : {cfg.phi_d, cfg.psi_a, cfg.psi_e, cfg.psi_d}) {
    require(std::isfinite(angle), "angles must be finite");
  }
  for (std::size_t i = 0; i < cfg.snr_grid_db.size(); ++i) {
    require(std::isfinite(cfg.snr_grid_db[i]), "snr_grid_db contains a non-finite value");
    if (i > 0) {
      require(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1],
              "snr_grid_db must be strictly increasing (at index " + std::to_string(i) + ")");
    }
  }
  require(cfg.trials >= 1, "trials=" + std::to_string(cfg.trials) + " must be positive");
  return cfg;
}

SystemConfig parse_config(std::istream& in) {
  SystemConfig cfg;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const auto real = [](double& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_double(k, v); };
  };
  const auto integer = [](int& field) -> Setter {
    return [&field](const std::string& k, const std::string& v) { field = parse_int<int>(k, v); };
  };
  const std::map<std::string, Setter> setters = {
      {"n_t", integer(cfg.n_t)},
      {"n_r", integer(cfg.n_r)},
      {"n_x", integer(cfg.n_x)},
      {"n_y", integer(cfg.n_y)},
      {"m_rpm", integer(cfg.m_rpm)},
      {"d_t", real(cfg.d_t)},
      {"d_r", real(cfg.d_r)},
      {"d_0", real(cfg.d_0)},
      {"eta", real(cfg.eta)},
      {"rho_0", real(cfg.rho_0)},
      {"k_r", real(cfg.k_r)},
      {"kappa_over_lambda", real(cfg.kappa_over_lambda)},
      {"delta_over_lambda", real(cfg.delta_over_lambda)},
      {"phi_a", real(cfg.phi_a)},
      {"phi_e", real(cfg.phi_e)},
      {"phi_d", real(cfg.phi_d)},
      {"psi_a", real(cfg.psi_a)},
      {"psi_e", real(cfg.psi_e)},
      {"psi_d", real(cfg.psi_d)},
      {"snr_grid_db",
       [&cfg](const std::string& k, const std::string& v) { cfg.snr_grid_db = parse_grid(k, v); }},
      {"seed",
       [&cfg](const std::string& k, const std::string& v) {
         cfg.seed = parse_int<std::uint64_t>(k, v);
       }},
      {"trials",
       [&cfg](const std::string& k, const std::string& v) {
         cfg.trials = parse_int<std::int64_t>(k, v);
       }},
  };

  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    it->second(key, value);
  }
  return validate(cfg);
}

SystemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_entries(const SystemConfig& cfg) {
  return {
      {"n_t", std::to_string(cfg.n_t)},
      {"n_r", std::to_string(cfg.n_r)},
      {"n_x", std::to_string(cfg.n_x)},
      {"n_y", std::to_string(cfg.n_y)},
      {"m_rpm", std::to_string(cfg.m_rpm)},
      {"d_t", format_number(cfg.d_t)},
      {"d_r", format_number(cfg.d_r)},
      {"d_0", format_number(cfg.d_0)},
      {"eta", format_number(cfg.eta)},
      {"rho_0", format_number(cfg.rho_0)},
      {"k_r", format_number(cfg.k_r)},
      {"kappa_over_lambda", format_number(cfg.kappa_over_lambda)},
      {"delta_over_lambda", format_number(cfg.delta_over_lambda)},
      {"phi_a", format_number(cfg.phi_a)},
      {"phi_e", format_number(cfg.phi_e)},
      {"phi_d", format_number(cfg.phi_d)},
      {"psi_a", format_number(cfg.psi_a)},
      {"psi_e", format_number(cfg.psi_e)},
      {"psi_d", format_number(cfg.psi_d)},
      {"snr_grid_db", join_grid(cfg.snr_grid_db)},
      {"seed", std::to_string(cfg.seed)},
      {"trials", std::to_string(cfg.trials)},
  };
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: buffer too small");
  return std::string(buf, ptr);
}

}  // namespace irs
