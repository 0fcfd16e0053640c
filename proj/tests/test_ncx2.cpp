#include <doctest.h>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "irs/airlink.hpp"
#include "irs/ncx2.hpp"

using irs::CMatrix;
using irs::CounterRng;
using irs::ErrorEventMoments;
using irs::StreamPurpose;
using irs::SystemConfig;

namespace {

double boost_pdf(double x, const ErrorEventMoments& mom) {
  const boost::math::non_central_chi_squared dist(2.0 * mom.n_r, mom.s_sq / mom.sigma_sq);
  return boost::math::pdf(dist, x / mom.sigma_sq) / mom.sigma_sq;
}

template <typename F>
double integrate_half_line(F f) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, 1e-14);
}

struct Sample {
  double mean = 0.0, var = 0.0, se_mean = 0.0, se_var = 0.0;
};

Sample sample_xi(const irs::CVector& d, const CMatrix& g_bar, const SystemConfig& cfg, int n,
                 std::uint32_t point) {
  const auto w = irs::rician_weights(cfg);
  std::vector<double> xs(n);
  CMatrix g;
  for (int i = 0; i < n; ++i) {
    CounterRng rng(31, StreamPurpose::kMoments, point, static_cast<std::uint64_t>(i));
    irs::sample_g_into(w, g_bar, rng, g);
    xs[i] = (g.adjoint() * d).squaredNorm();
  }
  Sample s;
  for (double x : xs) s.mean += x;
  s.mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double c = (x - s.mean) * (x - s.mean);
    m2 += c;
    m4 += c * c;
  }
  s.var = m2 / (n - 1);
  s.se_mean = std::sqrt(s.var / n);
  s.se_var = std::sqrt((m4 / n - s.var * s.var) / n);
  return s;
}

SystemConfig fig2() {
  SystemConfig cfg;
  cfg.d_r = 2.0;
  cfg.snr_grid_db = {0.0};
  return cfg;
}

}  // namespace

TEST_CASE("density matches the Boost non-central chi-square") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const ErrorEventMoments mom{5.0 * u(gen), 0.05 + 2.0 * u(gen), 1 + static_cast<int>(4 * u(gen))};
    const double x = (0.01 + 3.0 * u(gen)) * mom.mean();
    CHECK(irs::ncx2_pdf(x, mom) == doctest::Approx(boost_pdf(x, mom)).epsilon(1e-10));
  }
}

TEST_CASE("density integrates to one and has the right mean") {
  for (const ErrorEventMoments mom :
       {ErrorEventMoments{3.0, 1.0, 2}, ErrorEventMoments{0.0, 0.4, 1},
        ErrorEventMoments{40.0, 0.2, 4}, ErrorEventMoments{1e-3, 2.0, 3}}) {
    const double mass = integrate_half_line([&](double x) { return irs::ncx2_pdf(x, mom); });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    const double mean = integrate_half_line([&](double x) { return x * irs::ncx2_pdf(x, mom); });
    CHECK(mean == doctest::Approx(mom.mean()).epsilon(1e-8));
  }
  const ErrorEventMoments nr2{3.0, 1.0, 2};
  CHECK(nr2.mean() == 7.0);
}

TEST_CASE("density is non-negative and unimodal") {
  for (const ErrorEventMoments mom :
       {ErrorEventMoments{3.0, 1.0, 1}, ErrorEventMoments{10.0, 0.3, 2}, ErrorEventMoments{0.5, 1.0, 4}}) {
    int turns = 0;
    double prev = irs::ncx2_pdf(1e-3, mom);
    bool rising = irs::ncx2_pdf(2e-3, mom) > prev;
    for (double x = 2e-3; x < 10.0 * mom.mean(); x *= 1.01) {
      const double p = irs::ncx2_pdf(x, mom);
      CHECK(p >= 0.0);
      const bool up = p > prev;
      if (up != rising) {
        ++turns;
        rising = up;
      }
      prev = p;
    }
    CHECK(turns <= 1);
  }
  CHECK_THROWS_AS(irs::ncx2_pdf(0.0, {1.0, 1.0, 1}), std::domain_error);
  CHECK_THROWS_AS(irs::ncx2_pdf(1.0, {1.0, 0.0, 1}), std::domain_error);
}

TEST_CASE("Laplace transform against quadrature of the density") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ErrorEventMoments mom{10.0 * u(gen), 0.05 + 3.0 * u(gen), 1 + static_cast<int>(4 * u(gen))};
    const double a = std::pow(10.0, -2.0 + 3.0 * u(gen));
    const double ref =
        integrate_half_line([&](double x) { return std::exp(-a * x) * boost_pdf(x, mom); });
    CHECK(irs::laplace(mom, a) == doctest::Approx(ref).epsilon(1e-6));
  }
  CHECK(irs::laplace({2.0, 1.0, 2}, 0.0) == 1.0);
  CHECK_THROWS_AS(irs::laplace({2.0, 1.0, 2}, -1.0), std::domain_error);
  CHECK(irs::laplace({2.0, 1.0, 2}, -0.1) > 1.0);
}

TEST_CASE("Laplace transform is decreasing and log-convex") {
  const ErrorEventMoments mom{4.0, 0.7, 2};
  double prev = irs::laplace(mom, 0.0);
  for (double a = 0.05; a < 20.0; a += 0.05) {
    const double cur = irs::laplace(mom, a);
    CHECK(cur < prev);
    const double h = 0.01;
    const double second =
        std::log(irs::laplace(mom, a + h)) - 2.0 * std::log(cur) + std::log(irs::laplace(mom, a - h));
    CHECK(second >= -1e-12);
    prev = cur;
  }
}

TEST_CASE("event moments for the three error kinds") {
  const SystemConfig cfg = fig2();
  const CMatrix h = irs::build_h(cfg);
  const CMatrix gb = irs::build_g_bar(cfg);
  const auto w = irs::rician_weights(cfg);

  const auto ssk = irs::moments_ssk(h, gb, cfg, 0, 1);
  const irs::CVector d = h.col(0) - h.col(1);
  CHECK(ssk.sigma_sq == doctest::Approx(0.5 * w.nlos * w.nlos * d.squaredNorm()));
  std::complex<double> u = 0.0;
  for (Eigen::Index n = 0; n < d.size(); ++n) u += d(n) * std::conj(gb(n, 0));
  CHECK(ssk.s_sq == doctest::Approx(w.los * w.los * std::norm(u)));

  // Antipodal phases on one antenna: |e^{j0} - e^{j pi}|^2 = 4.
  const auto rpm = irs::moments_rpm(h, gb, cfg, 0, 0, 1);
  CHECK(rpm.sigma_sq == doctest::Approx(0.5 * w.nlos * w.nlos * 4.0 * h.col(0).squaredNorm()));
  CHECK(rpm.sigma_sq == doctest::Approx(2.0 * w.nlos * w.nlos * 16.0 * cfg.nu_t()));

  // A joint error with a zero rival column reduces to the phase-free term.
  CMatrix h0 = h;
  h0.col(1).setZero();
  const auto joint0 = irs::moments_joint(h0, gb, cfg, 0, 1, 0, 1);
  const auto direct0 = irs::event_moments(h0.col(0), gb, w);
  CHECK(joint0.sigma_sq == doctest::Approx(direct0.sigma_sq));
  CHECK(joint0.s_sq == doctest::Approx(direct0.s_sq));

  CHECK_THROWS_AS(irs::moments_ssk(h, gb, cfg, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(irs::moments_rpm(h, gb, cfg, 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(irs::moments_joint(h, gb, cfg, 0, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(irs::moments_joint(h, gb, cfg, 0, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(irs::moments_ssk(h, gb, cfg, 0, 2), std::invalid_argument);
}

TEST_CASE("SSK moments do not depend on the common phase") {
  SystemConfig cfg = fig2();
  cfg.m_rpm = 4;
  const CMatrix h = irs::build_h(cfg);
  const CMatrix gb = irs::build_g_bar(cfg);
  const auto ref = irs::moments_ssk(h, gb, cfg, 0, 1);
  const auto w = irs::rician_weights(cfg);
  for (int m = 0; m < 4; ++m) {
    const auto rot = std::polar(1.0, irs::rpm_phase(m, 4));
    const auto mom = irs::event_moments(rot * (h.col(0) - h.col(1)), gb, w);
    CHECK(mom.sigma_sq == doctest::Approx(ref.sigma_sq).epsilon(1e-14));
    CHECK(mom.s_sq == doctest::Approx(ref.s_sq).epsilon(1e-12));
  }
}

TEST_CASE("identical columns give a degenerate event") {
  SystemConfig cfg = fig2();
  cfg.phi_d = 0.0;
  const auto mom = irs::moments_ssk(irs::build_h(cfg), irs::build_g_bar(cfg), cfg, 0, 1);
  CHECK(mom.sigma_sq == 0.0);
  CHECK(mom.s_sq == 0.0);
  CHECK(irs::laplace(mom, 5.0) == 1.0);
}

TEST_CASE("Monte-Carlo moments of sampled xi") {
  SystemConfig cfg = fig2();
  cfg.n_r = 2;
  const CMatrix h = irs::build_h(cfg);
  const CMatrix gb = irs::build_g_bar(cfg);
  const auto rot = [](int m) { return std::polar(1.0, irs::rpm_phase(m, 2)); };
  const irs::CVector ds[] = {h.col(0) - h.col(1), h.col(1) * (rot(0) - rot(1)),
                             h.col(0) * rot(1) - h.col(1) * rot(0)};
  const ErrorEventMoments moms[] = {irs::moments_ssk(h, gb, cfg, 0, 1),
                                    irs::moments_rpm(h, gb, cfg, 1, 0, 1),
                                    irs::moments_joint(h, gb, cfg, 0, 1, 1, 0)};
  for (int k = 0; k < 3; ++k) {
    const Sample s = sample_xi(ds[k], gb, cfg, 100000, static_cast<std::uint32_t>(k));
    CAPTURE(k);
    CHECK(std::abs(s.mean - moms[k].mean()) < 3.0 * s.se_mean);
    CHECK(std::abs(s.var - moms[k].variance()) < 3.0 * s.se_var);
  }
}

TEST_CASE("empirical Laplace transform of sampled xi") {
  SystemConfig cfg = fig2();
  const CMatrix h = irs::build_h(cfg);
  const CMatrix gb = irs::build_g_bar(cfg);
  const auto mom = irs::moments_joint(h, gb, cfg, 1, 0, 0, 1);
  const irs::CVector d = h.col(1) + h.col(0);
  const auto w = irs::rician_weights(cfg);
  const int n = 100000;
  std::vector<double> xs(n);
  CMatrix g;
  for (int i = 0; i < n; ++i) {
    CounterRng rng(77, StreamPurpose::kMoments, 9, static_cast<std::uint64_t>(i));
    irs::sample_g_into(w, gb, rng, g);
    xs[i] = (g.adjoint() * d).squaredNorm();
  }
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 5; ++k) {
    const double a = std::pow(10.0, -1.0 + 2.0 * u(gen)) / mom.mean();
    double s = 0.0, s2 = 0.0;
    for (double x : xs) {
      const double e = std::exp(-a * x);
      s += e;
      s2 += e * e;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - irs::laplace(mom, a)) < 3.0 * se);
  }
}
