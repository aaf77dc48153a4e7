#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace nqkr {

using Complex = std::complex<double>;

inline constexpr double kResonantHbar = 4.0 * std::numbers::pi;

// Edge-band probability above which a lattice is considered too small.
inline constexpr double kTailMassLimit = 1e-10;

struct ModelParams {
  double kick_k = 1.0;
  double lambda = 0.3;
  double phi = -std::numbers::pi / 6.0;
  double hbar_eff = kResonantHbar;
  double epsilon = 1e-5;
  int n_modes = 512;

  // Throws DomainError on a power-of-two/size violation, negative lambda or
  // non-positive hbar/epsilon. lambda == 0 is accepted as the Hermitian case.
  void validate() const;

  bool at_resonance() const;

  bool operator==(const ModelParams&) const = default;
};

// Momentum lattice n in [-N/2, N/2) with p_n = n * hbar_eff, and the conjugate
// angle grid theta_j = -pi + 2 pi j / N.
//
// Storage order everywhere is ascending n: slot k holds n = k - N/2.
// Transform convention, with f_j the angle-space samples of sqrt(2 pi) psi:
//   f_j   = sum_n psi_n e^{+i n theta_j}
//   psi_n = (1/N) sum_j f_j e^{-i n theta_j}
// so <theta|n> = e^{i n theta}/sqrt(2 pi) and p = -i hbar d/dtheta has
// eigenvalue n * hbar on slot n.
class MomentumGrid {
 public:
  MomentumGrid(int n_modes, double hbar_eff);

  int size() const { return n_modes_; }
  double hbar_eff() const { return hbar_eff_; }

  long index(std::size_t slot) const {
    return static_cast<long>(slot) - n_modes_ / 2;
  }
  std::size_t slot(long n) const {
    return static_cast<std::size_t>(n + n_modes_ / 2);
  }
  double momentum(std::size_t slot) const { return index(slot) * hbar_eff_; }
  double angle(std::size_t j) const;

  // Slots with |n| >= 3N/8: the outer eighth of the lattice on each side.
  bool in_edge_band(std::size_t slot) const;

  bool operator==(const MomentumGrid&) const = default;

 private:
  int n_modes_;
  double hbar_eff_;
};

// Amplitudes are kept at unit total probability; the true norm N(t) lives in
// log_norm.
struct QuantumState {
  MomentumGrid grid;
  std::vector<Complex> amplitudes;
  double log_norm = 0.0;
  long t = 0;

  double total_probability() const;
  double edge_tail_mass() const;
};

// V_K(theta) = K cos(theta) + i lambda cos(theta + phi).
Complex kick_potential(double theta, const ModelParams& params);

QuantumState initial_state(const ModelParams& params);

// Closed-form resonant state after t kicks, sampled on the angle grid and
// transformed to the momentum lattice. Throws ResolutionError if the edge
// band carries more than kTailMassLimit, DomainError off resonance.
QuantumState analytic_state(const ModelParams& params, long t);

// log I_0(lambda t / 2 pi).
double analytic_log_norm(const ModelParams& params, long t);

// max_theta |V(theta) - conj(V(-theta))| over `samples` points of [-pi, pi).
double pt_symmetry_residual(const ModelParams& params, int samples = 4096);

}  // namespace nqkr
