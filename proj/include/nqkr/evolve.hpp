#pragma once

#include <span>
#include <vector>

#include "nqkr/fft.hpp"
#include "nqkr/model.hpp"
#include "nqkr/observables.hpp"

namespace nqkr {

// Precomputed tables for the Floquet step U = U_f U_K. Immutable after
// construction and safe to share between threads.
class PropagatorPlan {
 public:
  explicit PropagatorPlan(const ModelParams& params);

  const ModelParams& params() const { return params_; }
  const MomentumGrid& grid() const { return grid_; }
  const FourierTransform& transform() const { return fft_; }

  // exp(-i V_K(theta_j) / hbar_eff) on the angle grid.
  std::span<const Complex> kick_table() const { return kick_; }
  // exp(-i p_n^2 / 2 hbar_eff) on the momentum lattice.
  std::span<const Complex> free_table() const { return free_; }

 private:
  ModelParams params_;
  MomentumGrid grid_;
  FourierTransform fft_;
  std::vector<Complex> kick_;
  std::vector<Complex> free_;
};

// Kick half-step: angle-space multiplication by the kick table, then
// renormalization with the growth factor folded into log_norm. t unchanged.
QuantumState apply_kick(QuantumState state, const PropagatorPlan& plan);

// Free half-step; completes one labelled period, so t advances by one.
QuantumState apply_free(QuantumState state, const PropagatorPlan& plan);

QuantumState step(QuantumState state, const PropagatorPlan& plan);

struct PropagationOptions {
  long record_every = 1;
  // States to keep; each must be a multiple of record_every or t_max.
  std::vector<long> snapshot_times;
};

struct PropagationResult {
  ObservableSeries series;
  std::vector<QuantumState> snapshots;
};

// Records t = 0, every record_every-th kick, and t_max. Throws
// ResolutionError as soon as the edge band exceeds kTailMassLimit.
PropagationResult propagate(const ModelParams& params, long t_max,
                            const PropagationOptions& options);

ObservableSeries propagate(const ModelParams& params, long t_max,
                           long record_every = 1);

struct ResolvedPropagation {
  PropagationResult result;
  int n_modes = 0;  // lattice size that resolved the run
};

// propagate() with n_modes doubled after each ResolutionError, starting at
// params.n_modes; the last error is rethrown once n_modes would exceed
// max_modes.
ResolvedPropagation propagate_resolved(ModelParams params, long t_max,
                                       const PropagationOptions& options,
                                       int max_modes);

// record_every used when the caller does not choose one.
long default_record_every(long t_max);

}  // namespace nqkr
