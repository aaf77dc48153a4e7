#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nqkr/errors.hpp"
#include "nqkr/evolve.hpp"
#include "nqkr/model.hpp"
#include "nqkr/observables.hpp"

using namespace nqkr;
using std::numbers::pi;

namespace {

double max_diff(const QuantumState& a, const QuantumState& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.amplitudes.size(); ++k) {
    d = std::max(d, std::abs(a.amplitudes[k] - b.amplitudes[k]));
  }
  return d;
}

}  // namespace

TEST_CASE("plan tables") {
  ModelParams p;
  p.n_modes = 64;
  PropagatorPlan plan(p);
  const auto kick = plan.kick_table();
  for (std::size_t j = 0; j < kick.size(); ++j) {
    const double th = plan.grid().angle(j);
    const double expected = std::exp(p.lambda * std::cos(th + p.phi) / p.hbar_eff);
    CHECK(std::abs(std::abs(kick[j]) - expected) < 1e-14);
  }
  for (const auto& f : plan.free_table()) CHECK(std::abs(f - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("one kick reproduces the closed form at t = 1") {
  ModelParams p;
  PropagatorPlan plan(p);
  const auto s = step(initial_state(p), plan);
  const auto a = analytic_state(p, 1);
  CHECK(s.t == 1);
  CHECK(max_diff(s, a) < 1e-12);
  CHECK(std::abs(s.log_norm - a.log_norm) < 1e-12);
}

TEST_CASE("kick bookkeeping") {
  ModelParams p;
  p.lambda = 0.0;
  PropagatorPlan plan(p);
  const auto s = apply_kick(initial_state(p), plan);
  CHECK(std::abs(s.log_norm) < 1e-12);
  CHECK(s.t == 0);

  ModelParams q;
  q.kick_k = 0.0;
  q.phi = 0.0;
  PropagatorPlan plan_q(q);
  CHECK(std::abs(mean_p(apply_kick(initial_state(q), plan_q))) < 1e-12);
}

TEST_CASE("free step is the identity at resonance") {
  ModelParams p;
  PropagatorPlan plan(p);
  auto s = initial_state(p);
  for (int i = 0; i < 20; ++i) s = apply_kick(std::move(s), plan);
  const auto before = s;
  const auto after = apply_free(s, plan);
  CHECK(max_diff(before, after) < 1e-12);
  CHECK(after.log_norm == before.log_norm);
  CHECK(after.t == before.t + 1);

  auto r = before;
  for (int i = 0; i < 1000; ++i) r = apply_free(std::move(r), plan);
  CHECK(std::abs(mean_p2(r) / mean_p2(before) - 1.0) < 1e-9);
}

TEST_CASE("free phase off resonance") {
  ModelParams p;
  p.hbar_eff = 1.0;
  p.n_modes = 16;
  PropagatorPlan plan(p);
  const auto f = plan.free_table()[plan.grid().slot(1)];
  CHECK(std::abs(f - std::exp(Complex(0.0, -0.5))) < 1e-15);

  QuantumState s = initial_state(p);
  s.amplitudes.assign(16, Complex(0.0, 0.0));
  s.amplitudes[plan.grid().slot(1)] = 1.0;
  const auto r = apply_free(s, plan);
  CHECK(std::abs(r.amplitudes[plan.grid().slot(1)] - std::exp(Complex(0.0, -0.5))) < 1e-15);
}

TEST_CASE("propagation equals the closed form" * doctest::timeout(120)) {
  for (double lambda : {0.3, 0.5, 1.0}) {
    ModelParams p;
    p.lambda = lambda;
    p.n_modes = 1024;
    PropagatorPlan plan(p);
    auto s = initial_state(p);
    double worst_amp = 0.0, worst_log = 0.0;
    for (long t = 1; t <= 200; ++t) {
      s = step(std::move(s), plan);
      const auto a = analytic_state(p, t);
      worst_amp = std::max(worst_amp, max_diff(s, a));
      worst_log = std::max(worst_log, std::abs(s.log_norm - a.log_norm));
    }
    CAPTURE(lambda);
    CHECK(worst_amp < 1e-10);
    CHECK(worst_log < 1e-9);
  }
}

TEST_CASE("log norm follows the Bessel law") {
  ModelParams p;
  const auto series = propagate(p, 100);
  REQUIRE(series.size() == 101);
  for (const auto& e : series.entries) {
    CHECK(std::abs(e.log_norm - analytic_log_norm(p, e.t)) < 1e-9);
  }
}

TEST_CASE("kick composability") {
  ModelParams p;
  p.n_modes = 256;
  ModelParams doubled = p;
  doubled.kick_k *= 2;
  doubled.lambda *= 2;
  PropagatorPlan plan(p), plan2(doubled);
  const auto twice = apply_kick(apply_kick(initial_state(p), plan), plan);
  const auto once = apply_kick(initial_state(p), plan2);
  CHECK(max_diff(twice, once) < 1e-12);
  CHECK(std::abs(twice.log_norm - once.log_norm) < 1e-12);
}

TEST_CASE("determinism") {
  ModelParams p;
  const auto a = propagate(p, 150);
  const auto b = propagate(p, 150);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.entries[i].mean_p == b.entries[i].mean_p);
    CHECK(a.entries[i].mean_p2 == b.entries[i].mean_p2);
    CHECK(a.entries[i].otoc == b.entries[i].otoc);
    CHECK(a.entries[i].log_norm == b.entries[i].log_norm);
  }
}

TEST_CASE("t_max = 0") {
  const auto s = propagate(ModelParams{}, 0);
  REQUIRE(s.size() == 1);
  CHECK(s.entries[0].t == 0);
  CHECK(s.entries[0].log_norm == 0.0);
  CHECK(s.entries[0].mean_p == 0.0);
  CHECK(s.entries[0].mean_p2 == 0.0);
  CHECK(s.entries[0].otoc == 0.0);
}

TEST_CASE("Hermitian ballistic law") {
  for (double phi : {0.0, -pi / 6, 2.0}) {
    ModelParams p;
    p.lambda = 0.0;
    p.phi = phi;
    const auto s = propagate(p, 100);
    for (const auto& e : s.entries) {
      if (e.t == 0) continue;
      CHECK(std::abs(e.mean_p2 / (0.5 * e.t * e.t) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("recording schedule and snapshots") {
  ModelParams p;
  PropagationOptions opt;
  opt.record_every = 7;
  opt.snapshot_times = {14, 20};
  const auto r = propagate(p, 20, opt);
  std::vector<long> ts;
  for (const auto& e : r.series.entries) ts.push_back(e.t);
  CHECK(ts == std::vector<long>{0, 7, 14, 20});
  REQUIRE(r.snapshots.size() == 2);
  CHECK(r.snapshots[0].t == 14);
  CHECK(r.snapshots[1].t == 20);
  CHECK(default_record_every(1000) == 1);
  CHECK(default_record_every(3000) == 10);
}

TEST_CASE("resolution errors and automatic doubling") {
  ModelParams p;
  p.n_modes = 32;
  CHECK_THROWS_AS(propagate(p, 200), ResolutionError);
  const auto r = propagate_resolved(p, 200, {}, 4096);
  CHECK(r.n_modes > 32);
  CHECK(r.result.series.size() == 201);
  CHECK_THROWS_AS(propagate_resolved(p, 200, {}, 64), ResolutionError);
}
