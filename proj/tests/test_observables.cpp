#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nqkr/bessel.hpp"
#include "nqkr/evolve.hpp"
#include "nqkr/observables.hpp"
#include "oracles/bessel_series.hpp"

using namespace nqkr;
using std::numbers::pi;

namespace {

QuantumState evolved(ModelParams p, long t) {
  PropagatorPlan plan(p);
  auto s = initial_state(p);
  for (long i = 0; i < t; ++i) s = step(std::move(s), plan);
  return s;
}

QuantumState single_mode(long n) {
  ModelParams p;
  p.n_modes = 16;
  auto s = initial_state(p);
  s.amplitudes.assign(16, Complex(0.0, 0.0));
  s.amplitudes[s.grid.slot(n)] = Complex(0.6, 0.8);
  return s;
}

}  // namespace

TEST_CASE("moments of simple states") {
  const auto s = single_mode(2);
  CHECK(std::abs(mean_p2(s) - std::pow(8 * pi, 2)) < 1e-10);
  CHECK(otoc(s, 0.3) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(otoc(initial_state(ModelParams{}), 1e-5) == 0.0);

  auto sym = single_mode(3);
  sym.amplitudes[sym.grid.slot(3)] = std::sqrt(0.5);
  sym.amplitudes[sym.grid.slot(-3)] = Complex(0.0, std::sqrt(0.5));
  CHECK(mean_p(sym) == 0.0);
}

TEST_CASE("momentum distribution") {
  const auto d0 = momentum_distribution(initial_state(ModelParams{}));
  for (const auto& pt : d0) CHECK(pt.weight == (pt.p == 0.0 ? 1.0 : 0.0));

  ModelParams p;
  const auto s = evolved(p, 40);
  double sum = 0.0;
  for (const auto& pt : momentum_distribution(s)) {
    CHECK(pt.weight >= 0.0);
    sum += pt.weight;
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("moments at t = 10 against the Bessel oracle") {
  ModelParams p;
  const auto s = evolved(p, 10);
  const double x = 0.3 * 10 / (2 * pi);
  const double r = static_cast<double>(oracle::bessel_i_series(1, x) / oracle::bessel_i_series(0, x));
  const double sp = std::sin(p.phi);
  const double expected_p = -sp * r * 10;
  const double expected_p2 = sp * sp * 100 + (2 * pi / 0.3) * r * 10 * (std::cos(2 * p.phi) + 0.09);
  CHECK(std::abs(mean_p(s) / expected_p - 1.0) < 1e-10);
  CHECK(std::abs(mean_p2(s) / expected_p2 - 1.0) < 1e-10);
  const double var = mean_p2(s) - mean_p(s) * mean_p(s);
  CHECK(std::abs(otoc(s, 1e-5) / (1e-10 * var) - 1.0) < 1e-4);
}

TEST_CASE("otoc converges to the variance quadratically in epsilon") {
  ModelParams p;
  const auto s = evolved(p, 30);
  const double var = mean_p2(s) - mean_p(s) * mean_p(s);
  double previous = 0.0;
  for (double eps : {1e-4, 1e-5, 1e-6}) {
    const double err = std::abs(otoc(s, eps) / (eps * eps) - var) / var;
    if (previous > 0.0 && previous > 1e-12) {
      // Ten times smaller eps, about a hundred times smaller error.
      CHECK(err < previous / 50.0);
    }
    previous = err;
  }
  CHECK(previous < 1e-8);
}

TEST_CASE("phase parity") {
  ModelParams a;
  a.phi = 0.7;
  ModelParams b = a;
  b.phi = -0.7;
  const auto sa = evolved(a, 60), sb = evolved(b, 60);
  CHECK(std::abs(mean_p(sa) + mean_p(sb)) <= 1e-10 * std::abs(mean_p(sa)));
  CHECK(std::abs(mean_p2(sa) - mean_p2(sb)) <= 1e-10 * mean_p2(sa));
}

TEST_CASE("otoc stays in [0, 1]") {
  ModelParams p;
  p.lambda = 1.0;
  p.n_modes = 2048;
  const auto series = propagate(p, 200);
  for (const auto& e : series.entries) {
    CHECK(e.otoc >= 0.0);
    CHECK(e.otoc <= 1.0);
  }
  const auto s = evolved(p, 200);
  for (double eps : {1e-3, 0.05, 0.3, 1.0, 3.0}) {
    const double c = otoc(s, eps);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}
