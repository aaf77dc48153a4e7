#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "nqkr/errors.hpp"
#include "nqkr/theory.hpp"
#include "oracles/hp_theory.hpp"

using namespace nqkr;
using namespace nqkr::theory;
using std::numbers::pi;

namespace {

ModelParams params(double k, double lambda, double phi) {
  ModelParams p;
  p.kick_k = k;
  p.lambda = lambda;
  p.phi = phi;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("crossover time and regimes") {
  CHECK(t_c(params(1, 0.3, 0)) == doctest::Approx(2 * pi / 0.3));
  CHECK(t_c(params(1, 1, 0)) == doctest::Approx(2 * pi));
  CHECK_THROWS_AS(t_c(params(1, 0, 0)), DomainError);
  const auto p = params(1, 0.3, -pi / 6);
  CHECK(asymptotic_regime_values(p, 1, 1e-5).regime == Regime::Small);
  CHECK(asymptotic_regime_values(p, 20, 1e-5).regime == Regime::Crossover);
  CHECK(asymptotic_regime_values(p, 1000, 1e-5).regime == Regime::Large);
  CHECK_FALSE(asymptotic_regime_values(p, 20, 1e-5).asymptotic.has_value());
  CHECK(classify(params(1, 0, 0), 1e6) == Regime::Small);
  CHECK(to_string(Regime::Crossover) == "crossover");
  CHECK_THROWS_AS(mean_p_theory(params(1, -0.2, 0), 1.0), DomainError);
}

TEST_CASE("mean momentum") {
  for (double t : {0.5, 10.0, 400.0}) CHECK(mean_p_theory(params(1, 0.4, pi), t) == doctest::Approx(0.0));
  const double small = mean_p_theory(params(1, 0.5, -pi / 6), 1.0);
  CHECK(rel(small, 0.5 * 0.5 / (4 * pi)) < 0.01);
  const double large = mean_p_theory(params(1, 0.5, pi / 2), 1000.0);
  CHECK(rel(large, -(1000.0 - pi / 0.5)) < 1e-3);
}

TEST_CASE("mean energy") {
  CHECK(mean_p2_theory(params(1, 0, 0.9), 10.0) == doctest::Approx(50.0).epsilon(1e-14));
  const auto p = params(1, 0.4, -pi / 6);
  const double t = 0.05 * t_c(p);
  CHECK(rel(mean_p2_theory(p, t), (1 + 0.16) * t * t / 2) < 0.01);
  const auto q = params(1, 0.4, pi);
  const double t1 = 2000, t2 = 3000;
  const double slope = (mean_p2_theory(q, t2) - mean_p2_theory(q, t1)) / (t2 - t1);
  CHECK(rel(slope, 2 * pi * 1.16 / 0.4) < 1e-3);
}

TEST_CASE("otoc") {
  const double eps = 1e-5;
  const auto p = params(1, 0.4, -pi / 6);
  const double t = 0.05 * t_c(p);
  CHECK(rel(otoc_theory(p, t, eps), eps * eps * 1.16 * t * t / 2) < 0.01);

  const auto q = params(1, 0.4, pi / 2);
  const double slope_q = (otoc_theory(q, 3e4, eps) - otoc_theory(q, 2e4, eps)) / 1e4;
  CHECK(rel(slope_q, 2 * pi * eps * eps * 0.4) < 1e-3);

  const double phi = 0.8;
  const auto g = params(1.3, 0.4, phi);
  const double slope_g = (otoc_theory(g, 3e4, eps) - otoc_theory(g, 2e4, eps)) / 1e4;
  const double expected = 2 * pi * eps * eps / 0.4 * ((1 + std::cos(2 * phi)) * 1.69 / 2 + 0.16);
  CHECK(rel(slope_g, expected) < 1e-3);
}

TEST_CASE("otoc is eps^2 times the variance") {
  for (double lambda : {0.0, 0.05, 0.3, 1.0, 2.5}) {
    for (double phi : {-pi / 6, pi / 2, pi, 2.0}) {
      for (double t : {0.0, 0.3, 3.0, 40.0, 900.0, 3000.0}) {
        const auto p = params(1.1, lambda, phi);
        const double mp = mean_p_theory(p, t);
        const double expected = 1e-10 * (mean_p2_theory(p, t) - mp * mp);
        const double got = otoc_theory(p, t, 1e-5);
        CAPTURE(lambda);
        CAPTURE(phi);
        CAPTURE(t);
        CHECK(std::abs(got - expected) <= 1e-12 * std::abs(expected) + 1e-300);
      }
    }
  }
}

TEST_CASE("second-derivative limits") {
  const auto p = params(1, 0.3, -pi / 6);
  const double k_small = -std::sin(p.phi) * 0.3 / (2 * pi);
  CHECK(rel(s_p_theory(p, 0.0), k_small) < 1e-12);
  CHECK(std::abs(s_p_theory(p, 100 * t_c(p))) < 1e-3 * std::abs(k_small));
  for (double t : {0.0, 1.0, 50.0}) CHECK(s_p_theory(params(1, 0.3, pi), t) == doctest::Approx(0.0));

  CHECK(rel(s_e_theory(p, 0.0), 1.09) < 1e-12);
  CHECK(rel(s_e_theory(p, 100 * t_c(p)), 0.5) < 1e-3);
  CHECK(rel(s_e_theory(params(0, 0.3, 1.0), 0.0), 0.09) < 1e-12);
  CHECK(rel(s_e_theory(params(1, 0.3, pi), 0.0), 1.09) < 1e-12);
  CHECK(rel(s_e_theory(params(1, 0.0, 0.5), 7.0), 1.0) < 1e-12);

  CHECK(dp_dt_theory(p, 0.0) == 0.0);
  CHECK(rel(dp_dt_theory(p, 100 * t_c(p)), -std::sin(p.phi)) < 1e-3);

  const double eps = 1e-5;
  CHECK(rel(s_c_theory(p, 0.0, eps), eps * eps * 1.09) < 1e-12);
  CHECK(std::abs(s_c_theory(p, 100 * t_c(p), eps)) < 1e-3 * eps * eps * 1.09);
}

TEST_CASE("first derivative matches a central difference") {
  const double h = 1e-3;
  for (double lambda : {0.3, 1.0}) {
    const auto p = params(1, lambda, -pi / 6);
    for (double f : {0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
      const double t = f * t_c(p);
      const double fd = (mean_p_theory(p, t + h) - mean_p_theory(p, t - h)) / (2 * h);
      CAPTURE(t);
      CHECK(rel(dp_dt_theory(p, t), fd) < 1e-6);
    }
  }
}

TEST_CASE("second derivatives match high-precision differences") {
  const double h = 1e-3;
  for (double lambda : {0.3, 1.0}) {
    for (double phi : {-pi / 6, pi / 2, 2.5}) {
      const auto p = params(1, lambda, phi);
      for (double f : {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        const double t = f * t_c(p);
        const auto d = oracle::hp_second_difference(1, lambda, phi, t, h);
        CAPTURE(lambda);
        CAPTURE(phi);
        CAPTURE(t);
        CHECK(rel(s_p_theory(p, t), static_cast<double>(d.mean_p)) < 1e-6);
        CHECK(rel(s_e_theory(p, t), static_cast<double>(d.mean_p2)) < 1e-6);
        CHECK(rel(s_c_theory(p, t, 1.0), static_cast<double>(d.variance)) < 1e-6);
      }
    }
  }
}

TEST_CASE("asymptotes are approached monotonically") {
  const auto p = params(1, 0.3, -pi / 6);
  const double tc = t_c(p);
  auto gap_small = [&](double t) {
    const double exact = mean_p2_theory(p, t);
    return std::abs(exact - 1.09 * t * t / 2) / exact;
  };
  auto gap_large = [&](double t) {
    const double exact = mean_p2_theory(p, t);
    const double s = std::sin(p.phi);
    const double asym = s * s * t * t + 2 * pi * t * (std::cos(2 * p.phi) + 0.09) / 0.3;
    return std::abs(exact - asym) / exact;
  };
  double previous = 1e300;
  for (double f = 1.0; f >= 1e-3; f /= 1.5) {
    const double g = gap_small(f * tc);
    CHECK(g < previous);
    previous = g;
  }
  previous = 1e300;
  for (double f = 1.0; f <= 1e3; f *= 1.5) {
    const double g = gap_large(f * tc);
    CHECK(g < previous);
    previous = g;
  }
}

TEST_CASE("mean momentum is proportional to sin(phi)") {
  const double t = 500.0;
  const double ref = mean_p_theory(params(1, 0.3, pi / 2), t);
  for (double phi : {pi / 6, -pi / 6, pi / 3, -pi / 3, pi / 2, -pi / 2}) {
    CHECK(rel(mean_p_theory(params(1, 0.3, phi), t) / std::sin(phi), ref) < 1e-10);
  }
}

TEST_CASE("Hermitian limits") {
  const auto p = params(1, 0.0, -pi / 6);
  CHECK(mean_p_theory(p, 10.0) == 0.0);
  CHECK(s_p_theory(p, 10.0) == 0.0);
  CHECK(dp_dt_theory(p, 10.0) == 0.0);
  CHECK(rel(s_c_theory(p, 10.0, 1.0), 1.0) < 1e-12);
  // Continuity with small lambda.
  const auto q = params(1, 1e-7, -pi / 6);
  CHECK(std::abs(mean_p2_theory(q, 10.0) - 50.0) < 1e-4);
  CHECK(std::abs(s_e_theory(q, 10.0) - 1.0) < 1e-4);
}
