#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nqkr/model.hpp"
#include "nqkr/observables.hpp"

namespace nqkr::analysis {

enum class FitKind { Exponential, Gaussian };

std::string_view to_string(FitKind kind);

struct FitOptions {
  // Points below floor_fraction * peak weight are left out of every fit.
  double floor_fraction = 1e-12;
  int min_points = 5;
  // Fits whose rms log residual exceeds this are flagged.
  double residual_ceiling = 2.0;
};

struct FitResult {
  FitKind kind = FitKind::Exponential;
  // Exponential: |psi(p)|^2 ~ exp(-|p - p_peak| / xi), one xi per flank and
  // their point-count weighted mean.
  double xi = 0.0;
  double xi_left = 0.0;
  double xi_right = 0.0;
  // Gaussian: |psi(p)|^2 ~ exp(-(p - p_c)^2 / sigma); variance is sigma / 2.
  double p_c = 0.0;
  double sigma = 0.0;
  double rms_log_residual = 0.0;
  double p_min = 0.0;
  double p_max = 0.0;
  int n_points = 0;
  bool flagged = false;
};

// Straight-line fits of log weight against |p - p_peak| on each flank. Each
// flank starts at the peak and runs outward while the weight stays above the
// floor. Throws FitError on too few points or a non-decaying flank.
FitResult fit_exponential(const MomentumDistribution& dist,
                          const FitOptions& options = {});

// Quadratic fit of log weight against p over the contiguous support above
// the floor, each point weighted by its squared weight so that the
// numerically dominant core drives the fit and the skewed far tails do not
// pull the vertex. rms_log_residual is the same weighted rms.
// Throws FitError on too few points or non-negative curvature.
FitResult fit_gaussian(const MomentumDistribution& dist,
                       const FitOptions& options = {});

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Coefficients c_0..c_degree of the least-squares polynomial.
std::vector<double> fit_polynomial(std::span<const double> x,
                                   std::span<const double> y, int degree);

enum class SeriesQuantity { MeanP, MeanP2, Otoc };

// f(t+1) - 2 f(t) + f(t-1) at every interior entry. Throws SpacingError
// unless consecutive entries are exactly one kick apart.
std::vector<std::pair<long, double>> second_difference(
    const ObservableSeries& series, SeriesQuantity which);

enum class DiagramQuantity { SpOverLambda, SE, SCOverEps2 };
enum class DiagramSource { Simulation, Theory };

std::string_view to_string(DiagramQuantity q);
std::string_view to_string(DiagramSource s);

struct PhaseDiagram {
  std::vector<long> t_values;
  std::vector<double> lambda_values;
  DiagramQuantity quantity = DiagramQuantity::SpOverLambda;
  DiagramSource source = DiagramSource::Theory;
  // Row-major: one row per lambda, one column per t.
  std::vector<double> values;
  // "ok", or the reason the cell holds no value.
  std::vector<std::string> flags;

  double at(std::size_t lambda_index, std::size_t t_index) const {
    return values[lambda_index * t_values.size() + t_index];
  }
  const std::string& flag(std::size_t lambda_index, std::size_t t_index) const {
    return flags[lambda_index * t_values.size() + t_index];
  }
};

struct SweepOptions {
  // 0 selects worker_count().
  int workers = 0;
  // Simulation rows double n_modes after a ResolutionError up to this size;
  // beyond it the row is flagged "resolution".
  int max_modes = 1 << 15;
};

// Workers for parallel sweeps: NQKR_WORKERS if set, else the hardware
// concurrency.
int worker_count();

// One diagram per requested quantity from a single pass over lambda.
// Axes are sorted ascending; lambda values must be > 0.
std::vector<PhaseDiagram> sweep_phase_diagrams(
    std::vector<long> t_values, std::vector<double> lambda_values,
    const ModelParams& base, std::span<const DiagramQuantity> quantities,
    DiagramSource source, const SweepOptions& options = {});

PhaseDiagram sweep_phase_diagram(std::vector<long> t_values,
                                 std::vector<double> lambda_values,
                                 const ModelParams& base,
                                 DiagramQuantity quantity,
                                 DiagramSource source,
                                 const SweepOptions& options = {});

}  // namespace nqkr::analysis
