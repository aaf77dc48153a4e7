#include "nqkr/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "nqkr/bessel.hpp"
#include "nqkr/errors.hpp"
#include "nqkr/fft.hpp"
#include "nqkr/summation.hpp"

namespace nqkr {

void ModelParams::validate() const {
  if (n_modes < 8 || !std::has_single_bit(static_cast<unsigned>(n_modes))) {
    throw DomainError("n_modes must be a power of two >= 8, got " +
                      std::to_string(n_modes));
  }
  if (!std::isfinite(kick_k) || !std::isfinite(phi)) {
    throw DomainError("kick strength and phase must be finite");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be finite and >= 0");
  }
  if (!(hbar_eff > 0.0) || !std::isfinite(hbar_eff)) {
    throw DomainError("hbar_eff must be positive");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive");
  }
}

bool ModelParams::at_resonance() const {
  return std::abs(hbar_eff - kResonantHbar) <= 1e-12 * kResonantHbar;
}

MomentumGrid::MomentumGrid(int n_modes, double hbar_eff)
    : n_modes_(n_modes), hbar_eff_(hbar_eff) {}

double MomentumGrid::angle(std::size_t j) const {
  return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 n_modes_;
}

bool MomentumGrid::in_edge_band(std::size_t slot) const {
  const long n = index(slot);
  return 8 * std::abs(n) >= 3L * n_modes_;
}

double QuantumState::total_probability() const {
  CompensatedSum sum;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum.value();
}

double QuantumState::edge_tail_mass() const {
  CompensatedSum sum;
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    if (grid.in_edge_band(k)) sum += std::norm(amplitudes[k]);
  }
  return sum.value();
}

Complex kick_potential(double theta, const ModelParams& params) {
  return {params.kick_k * std::cos(theta),
          params.lambda * std::cos(theta + params.phi)};
}

QuantumState initial_state(const ModelParams& params) {
  params.validate();
  QuantumState state{MomentumGrid(params.n_modes, params.hbar_eff),
                     std::vector<Complex>(params.n_modes), 0.0, 0};
  state.amplitudes[state.grid.slot(0)] = 1.0;
  return state;
}

QuantumState analytic_state(const ModelParams& params, long t) {
  params.validate();
  if (!params.at_resonance()) {
    throw DomainError("analytic_state: closed form requires hbar_eff = 4 pi");
  }
  if (t < 0) throw DomainError("analytic_state: t must be >= 0");
  if (t == 0) return initial_state(params);

  QuantumState state = initial_state(params);
  const std::size_t n = state.amplitudes.size();
  // f(theta) = exp{-i t V(theta) / 4 pi}; its real exponent is
  // t lambda cos(theta + phi) / 4 pi and is shifted by its grid maximum.
  const Complex prefactor(0.0, -static_cast<double>(t) / kResonantHbar);
  std::vector<Complex> exponent(n);
  double max_real = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    exponent[j] = prefactor * kick_potential(state.grid.angle(j), params);
    max_real = std::max(max_real, exponent[j].real());
  }
  for (std::size_t j = 0; j < n; ++j) {
    state.amplitudes[j] = std::exp(exponent[j] - max_real);
  }
  to_momentum(state.amplitudes, FourierTransform(static_cast<int>(n)));

  const double probability = state.total_probability();
  const double inv = 1.0 / std::sqrt(probability);
  for (auto& a : state.amplitudes) a *= inv;
  state.log_norm = 2.0 * max_real + std::log(probability);
  state.t = t;

  const double tail = state.edge_tail_mass();
  if (tail > kTailMassLimit) {
    throw ResolutionError("analytic_state: edge tail mass " +
                              std::to_string(tail) + " at t=" +
                              std::to_string(t) + " with n_modes=" +
                              std::to_string(params.n_modes),
                          t, tail);
  }
  return state;
}

double analytic_log_norm(const ModelParams& params, long t) {
  if (!params.at_resonance()) {
    throw DomainError("analytic_log_norm: requires hbar_eff = 4 pi");
  }
  if (t < 0) throw DomainError("analytic_log_norm: t must be >= 0");
  const double x = std::abs(params.lambda) * static_cast<double>(t) /
                   (2.0 * std::numbers::pi);
  return bessel::log_i0(x);
}

double pt_symmetry_residual(const ModelParams& params, int samples) {
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double theta =
        -std::numbers::pi + 2.0 * std::numbers::pi * j / samples;
    const Complex d =
        kick_potential(theta, params) - std::conj(kick_potential(-theta, params));
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

}  // namespace nqkr
