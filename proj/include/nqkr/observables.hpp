#pragma once

#include <utility>
#include <vector>

#include "nqkr/model.hpp"

namespace nqkr {

struct ObservableRecord {
  long t = 0;
  double log_norm = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  double otoc = 0.0;
};

struct ObservableSeries {
  std::vector<ObservableRecord> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  const ObservableRecord& back() const { return entries.back(); }
};

struct MomentumPoint {
  double p = 0.0;
  double weight = 0.0;
};

using MomentumDistribution = std::vector<MomentumPoint>;

// All moments assume unit total probability, so the division by N(t) in the
// rescaled definitions is already applied.
double mean_p(const QuantumState& state);
double mean_p2(const QuantumState& state);

// C = 1 - |sum_n e^{-i eps p_n} |psi_n|^2|^2, evaluated about the mean
// momentum so that small C does not come from cancelling 1 - (1 - C).
double otoc(const QuantumState& state, double epsilon);

MomentumDistribution momentum_distribution(const QuantumState& state);

ObservableRecord measure(const QuantumState& state, double epsilon);

}  // namespace nqkr
