#include "nqkr/evolve.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "nqkr/errors.hpp"

namespace nqkr {

PropagatorPlan::PropagatorPlan(const ModelParams& params)
    : params_(params),
      grid_(params.n_modes, params.hbar_eff),
      fft_(params.n_modes),
      kick_(static_cast<std::size_t>(params.n_modes)),
      free_(static_cast<std::size_t>(params.n_modes)) {
  params_.validate();
  const double hbar = params.hbar_eff;
  for (std::size_t j = 0; j < kick_.size(); ++j) {
    kick_[j] = std::exp(Complex(0.0, -1.0) *
                        kick_potential(grid_.angle(j), params) / hbar);
  }
  for (std::size_t k = 0; k < free_.size(); ++k) {
    // p_n^2 / 2 hbar = 2 pi n^2 (hbar / 4 pi); the whole turns are removed
    // before scaling so the resonant phases are exactly zero.
    const double n = static_cast<double>(grid_.index(k));
    const double turns = std::fmod(n * n * (hbar / kResonantHbar), 1.0);
    const double phase = 2.0 * std::numbers::pi * turns;
    free_[k] = std::polar(1.0, -phase);
  }
}

QuantumState apply_kick(QuantumState state, const PropagatorPlan& plan) {
  auto& amps = state.amplitudes;
  to_angle(amps, plan.transform());
  const auto table = plan.kick_table();
  for (std::size_t j = 0; j < amps.size(); ++j) amps[j] *= table[j];
  to_momentum(amps, plan.transform());

  const double growth = state.total_probability();
  assert(growth > 0.0 && std::isfinite(growth));
  const double inv = 1.0 / std::sqrt(growth);
  for (auto& a : amps) a *= inv;
  state.log_norm += std::log(growth);
  return state;
}

QuantumState apply_free(QuantumState state, const PropagatorPlan& plan) {
  const auto table = plan.free_table();
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    state.amplitudes[k] *= table[k];
  }
  ++state.t;
  return state;
}

QuantumState step(QuantumState state, const PropagatorPlan& plan) {
  return apply_free(apply_kick(std::move(state), plan), plan);
}

long default_record_every(long t_max) { return t_max <= 1000 ? 1 : 10; }

PropagationResult propagate(const ModelParams& params, long t_max,
                            const PropagationOptions& options) {
  if (t_max < 0) throw DomainError("propagate: t_max must be >= 0");
  if (options.record_every < 1) {
    throw DomainError("propagate: record_every must be >= 1");
  }
  const PropagatorPlan plan(params);
  PropagationResult result;
  auto wanted = options.snapshot_times;
  std::sort(wanted.begin(), wanted.end());
  auto keep = [&](const QuantumState& s) {
    if (std::binary_search(wanted.begin(), wanted.end(), s.t)) {
      result.snapshots.push_back(s);
    }
  };

  QuantumState state = initial_state(params);
  result.series.entries.push_back(measure(state, params.epsilon));
  keep(state);
  for (long t = 1; t <= t_max; ++t) {
    state = step(std::move(state), plan);
    const double tail = state.edge_tail_mass();
    if (tail > kTailMassLimit) {
      throw ResolutionError("propagate: edge tail mass " +
                                std::to_string(tail) + " at t=" +
                                std::to_string(t) + " with n_modes=" +
                                std::to_string(params.n_modes),
                            t, tail);
    }
    if (t % options.record_every == 0 || t == t_max) {
      result.series.entries.push_back(measure(state, params.epsilon));
    }
    keep(state);
  }
  return result;
}

ObservableSeries propagate(const ModelParams& params, long t_max,
                           long record_every) {
  return propagate(params, t_max, PropagationOptions{record_every, {}}).series;
}

ResolvedPropagation propagate_resolved(ModelParams params, long t_max,
                                       const PropagationOptions& options,
                                       int max_modes) {
  for (;;) {
    try {
      return {propagate(params, t_max, options), params.n_modes};
    } catch (const ResolutionError&) {
      if (params.n_modes * 2 > max_modes) throw;
      params.n_modes *= 2;
    }
  }
}

}  // namespace nqkr
