#include "nqkr/observables.hpp"

#include <algorithm>
#include <cmath>

#include "nqkr/summation.hpp"

namespace nqkr {

double mean_p(const QuantumState& state) {
  CompensatedSum sum;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    sum += state.grid.momentum(k) * std::norm(state.amplitudes[k]);
  }
  return sum.value();
}

double mean_p2(const QuantumState& state) {
  CompensatedSum sum;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    const double p = state.grid.momentum(k);
    sum += p * p * std::norm(state.amplitudes[k]);
  }
  return sum.value();
}

double otoc(const QuantumState& state, double epsilon) {
  // With q = p - <p> and D = sum_n w_n (e^{-i eps q_n} - 1):
  //   C = 1 - |1 + D|^2 = 4 sum_n w_n sin^2(eps q_n / 2) - |D|^2.
  const double center = mean_p(state);
  CompensatedSum half_angle;
  CompensatedSum imag;
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    const double w = std::norm(state.amplitudes[k]);
    if (w == 0.0) continue;
    const double arg = epsilon * (state.grid.momentum(k) - center);
    const double s = std::sin(0.5 * arg);
    half_angle += w * s * s;
    imag += -w * std::sin(arg);
  }
  const double re_d = -2.0 * half_angle.value();
  const double im_d = imag.value();
  const double c = -2.0 * re_d - (re_d * re_d + im_d * im_d);
  return std::clamp(c, 0.0, 1.0);
}

MomentumDistribution momentum_distribution(const QuantumState& state) {
  MomentumDistribution out;
  out.reserve(state.amplitudes.size());
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    out.push_back({state.grid.momentum(k), std::norm(state.amplitudes[k])});
  }
  return out;
}

ObservableRecord measure(const QuantumState& state, double epsilon) {
  return {state.t, state.log_norm, mean_p(state), mean_p2(state),
          otoc(state, epsilon)};
}

}  // namespace nqkr
