#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "irs/errors.hpp"
#include "irs/sysconfig.hpp"

using irs::ConfigError;
using irs::SystemConfig;

namespace {

SystemConfig parse(const std::string& text) {
  std::istringstream in(text);
  return irs::parse_config(in);
}

std::string render(const SystemConfig& cfg) {
  std::string text;
  for (const auto& [k, v] : irs::config_entries(cfg)) text += k + " = " + v + "\n";
  return text;
}

}  // namespace

TEST_CASE("path loss against a 50-digit evaluation") {
  using Big = boost::multiprecision::cpp_dec_float_50;
  const double expected = static_cast<double>(boost::multiprecision::pow(Big(4), Big("-2.3")));
  CHECK(irs::path_loss(1.0, 4.0, 2.3) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(irs::path_loss(1.0, 4.0, 2.3) == doctest::Approx(0.04124).epsilon(1e-4));
  CHECK(irs::path_loss(2.0, 1.0, 2.3) == 2.0);
  CHECK_THROWS_AS(irs::path_loss(0.0, 1.0, 2.3), std::domain_error);
  CHECK_THROWS_AS(irs::path_loss(1.0, -1.0, 2.3), std::domain_error);
  CHECK_THROWS_AS(irs::path_loss(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("path loss monotonicity on random samples") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double rho = u(gen), d = u(gen), eta = u(gen) / 10.0 + 0.1;
    const double step = 1.0 + u(gen) / 100.0;
    CHECK(irs::path_loss(rho, d * step, eta) < irs::path_loss(rho, d, eta));
    CHECK(irs::path_loss(rho * step, d, eta) > irs::path_loss(rho, d, eta));
  }
}

TEST_CASE("derived quantities") {
  SystemConfig cfg;
  cfg.n_x = 4;
  cfg.n_y = 5;
  cfg.snr_grid_db = {0.0};
  const SystemConfig v = irs::validate(cfg);
  CHECK(v.irs_elements() == 20);
  CHECK(v.bits_per_use() == 2);
  CHECK(v.hypotheses() == 4);

  cfg.n_t = 8;
  cfg.m_rpm = 4;
  CHECK(cfg.bits_bs() == 3);
  CHECK(cfg.bits_irs() == 2);

  cfg.d_t = 4.0;
  cfg.d_r = 2.0;
  cfg.d_0 = 2.0;
  CHECK(cfg.nu_t() == doctest::Approx(std::pow(2.0, -2.3)));
  CHECK(cfg.nu_r() == doctest::Approx(1.0));
}

TEST_CASE("validate rejects each broken invariant by name") {
  const auto message = [](SystemConfig cfg) -> std::string {
    try {
      irs::validate(cfg);
    } catch (const ConfigError& e) {
      return e.what();
    }
    return "";
  };
  SystemConfig cfg;
  cfg.snr_grid_db = {0.0, 1.0};

  auto c = cfg;
  c.m_rpm = 3;
  CHECK(message(c).find("m_rpm=3 not a power of two") != std::string::npos);
  c = cfg;
  c.n_t = 6;
  CHECK(message(c).find("n_t=6") != std::string::npos);
  c = cfg;
  c.n_x = 0;
  CHECK(message(c).find("n_x") != std::string::npos);
  c = cfg;
  c.d_r = 0.0;
  CHECK(message(c).find("d_r") != std::string::npos);
  c = cfg;
  c.eta = -1.0;
  CHECK(message(c).find("eta") != std::string::npos);
  c = cfg;
  c.rho_0 = 0.0;
  CHECK(message(c).find("rho_0") != std::string::npos);
  c = cfg;
  c.k_r = -0.5;
  CHECK(message(c).find("k_r") != std::string::npos);
  c = cfg;
  c.snr_grid_db = {0.0, 0.0};
  CHECK(message(c).find("snr_grid_db") != std::string::npos);
  c = cfg;
  c.trials = 0;
  CHECK(message(c).find("trials") != std::string::npos);

  c = cfg;
  c.k_r = std::numeric_limits<double>::infinity();
  CHECK(message(c).empty());
  c = cfg;
  c.m_rpm = 1;
  CHECK(message(c).empty());
}

TEST_CASE("validate is idempotent") {
  SystemConfig cfg;
  cfg.snr_grid_db = {-3.0, 0.5, 9.0};
  const SystemConfig once = irs::validate(cfg);
  const SystemConfig twice = irs::validate(once);
  CHECK(render(once) == render(twice));
  CHECK(render(once) == render(cfg));
}

TEST_CASE("parse grid forms, comments and errors") {
  const SystemConfig a = parse("# scenario\nn_x = 4\nn_y=5 # trailing\nsnr_grid_db = 0:5:20\n");
  CHECK(a.irs_elements() == 20);
  REQUIRE(a.snr_grid_db.size() == 5);
  CHECK(a.snr_grid_db.back() == 20.0);

  const SystemConfig b = parse("snr_grid_db = -20:1:40\n");
  CHECK(b.snr_grid_db.size() == 61);
  CHECK(b.snr_grid_db[20] == 0.0);

  const SystemConfig c = parse("snr_grid_db = 1, 2.5, 7\nk_r = inf\n");
  CHECK(c.snr_grid_db == std::vector<double>{1.0, 2.5, 7.0});
  CHECK(std::isinf(c.k_r));

  CHECK_THROWS_AS(parse("bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("n_t = 2\nn_t = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse("n_t 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("n_t = two\n"), ConfigError);
  CHECK_THROWS_AS(parse("n_t = 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("snr_grid_db = 0:0:10\n"), ConfigError);
  CHECK_THROWS_AS(parse("snr_grid_db = 3,2\n"), ConfigError);
  CHECK_THROWS_AS(parse("m_rpm = 3\n"), ConfigError);
  CHECK_THROWS_AS(irs::load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("canonical rendering round-trips exactly") {
  SystemConfig cfg;
  cfg.phi_a = 0.1 + 0.2;
  cfg.d_r = 1.0 / 3.0;
  cfg.k_r = std::numeric_limits<double>::infinity();
  cfg.snr_grid_db = {-1.25, 1e-3, 0.1, 17.0};
  cfg.seed = 18446744073709551615ull;
  cfg.trials = 123456789;
  const SystemConfig back = parse(render(cfg));
  CHECK(render(back) == render(cfg));
  CHECK(back.phi_a == cfg.phi_a);
  CHECK(back.d_r == cfg.d_r);
  CHECK(back.seed == cfg.seed);
  CHECK(back.snr_grid_db == cfg.snr_grid_db);
}

TEST_CASE("shipped scenarios load") {
  const std::string dir = IRS_CONFIG_DIR;
  const SystemConfig f2 = irs::load_config(dir + "/fig2.cfg");
  CHECK(f2.irs_elements() == 16);
  CHECK(f2.n_r == 1);
  const SystemConfig f3 = irs::load_config(dir + "/fig3.cfg");
  CHECK(f3.irs_elements() == 20);
  CHECK(f3.n_r == 2);
  CHECK(f3.d_r == 4.0);
  const SystemConfig f4 = irs::load_config(dir + "/fig4.cfg");
  CHECK(f4.snr_grid_db.back() == 40.0);
}

TEST_CASE("format_number is shortest round-trip") {
  CHECK(irs::format_number(0.1) == "0.1");
  CHECK(irs::format_number(1e-5) == "1e-05");
  CHECK(irs::format_number(20.0) == "20");
  CHECK(irs::format_number(std::nan("")) == "nan");
}
