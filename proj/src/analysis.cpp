#include "nqkr/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "nqkr/errors.hpp"
#include "nqkr/summation.hpp"

namespace nqkr::analysis {
namespace {

struct Support {
  std::size_t peak = 0;
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // inclusive
};

// Contiguous run around the peak with weight above floor * peak.
Support support_of(const MomentumDistribution& dist, double floor_fraction) {
  if (dist.empty()) throw FitError("fit: empty distribution");
  Support s;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i].weight > dist[s.peak].weight) s.peak = i;
  }
  const double floor = floor_fraction * dist[s.peak].weight;
  if (!(dist[s.peak].weight > 0.0)) throw FitError("fit: zero distribution");
  s.first = s.last = s.peak;
  while (s.first > 0 && dist[s.first - 1].weight > floor) --s.first;
  while (s.last + 1 < dist.size() && dist[s.last + 1].weight > floor) ++s.last;
  return s;
}

Eigen::VectorXd weighted_polyfit(std::span<const double> x,
                                 std::span<const double> y,
                                 std::span<const double> w, int degree) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sw = w.empty() ? 1.0 : std::sqrt(w[i]);
    double power = 1.0;
    for (int d = 0; d <= degree; ++d) {
      a(i, d) = sw * power;
      power *= x[i];
    }
    b(i) = sw * y[i];
  }
  return a.colPivHouseholderQr().solve(b);
}

struct Flank {
  double xi = 0.0;
  int points = 0;
  double sq_residual = 0.0;
};

Flank fit_flank(const MomentumDistribution& dist, std::size_t peak,
                std::size_t end, int direction) {
  std::vector<double> x, y;
  for (std::size_t i = peak;; i += direction) {
    x.push_back(std::abs(dist[i].p - dist[peak].p));
    y.push_back(std::log(dist[i].weight));
    if (i == end) break;
  }
  if (x.size() < 2) throw FitError("fit_exponential: flank has < 2 points");
  const auto c = weighted_polyfit(x, y, {}, 1);
  if (!(c(1) < 0.0)) throw FitError("fit_exponential: flank does not decay");
  Flank f;
  f.xi = -1.0 / c(1);
  f.points = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (c(0) + c(1) * x[i]);
    f.sq_residual += r * r;
  }
  return f;
}

}  // namespace

std::string_view to_string(FitKind kind) {
  return kind == FitKind::Exponential ? "exponential" : "gaussian";
}

FitResult fit_exponential(const MomentumDistribution& dist,
                          const FitOptions& options) {
  const Support s = support_of(dist, options.floor_fraction);
  const int total = static_cast<int>(s.last - s.first + 1);
  if (total < options.min_points) {
    throw FitError("fit_exponential: " + std::to_string(total) +
                   " points above floor, need " +
                   std::to_string(options.min_points));
  }
  const Flank left = fit_flank(dist, s.peak, s.first, -1);
  const Flank right = fit_flank(dist, s.peak, s.last, +1);

  FitResult r;
  r.kind = FitKind::Exponential;
  r.xi_left = left.xi;
  r.xi_right = right.xi;
  r.xi = (left.xi * left.points + right.xi * right.points) /
         (left.points + right.points);
  r.p_c = dist[s.peak].p;
  r.rms_log_residual = std::sqrt((left.sq_residual + right.sq_residual) /
                                 (left.points + right.points));
  r.p_min = dist[s.first].p;
  r.p_max = dist[s.last].p;
  r.n_points = total;
  r.flagged = r.rms_log_residual > options.residual_ceiling;
  return r;
}

FitResult fit_gaussian(const MomentumDistribution& dist,
                       const FitOptions& options) {
  const Support s = support_of(dist, options.floor_fraction);
  const int total = static_cast<int>(s.last - s.first + 1);
  if (total < options.min_points) {
    throw FitError("fit_gaussian: " + std::to_string(total) +
                   " points above floor, need " +
                   std::to_string(options.min_points));
  }
  // Centre and scale the abscissa for conditioning.
  const double origin = dist[s.peak].p;
  const double scale =
      std::max(std::abs(dist[s.last].p - dist[s.first].p), 1e-300);
  std::vector<double> u, y, w;
  for (std::size_t i = s.first; i <= s.last; ++i) {
    u.push_back((dist[i].p - origin) / scale);
    y.push_back(std::log(dist[i].weight));
    w.push_back(dist[i].weight * dist[i].weight);
  }
  const auto c = weighted_polyfit(u, y, w, 2);
  if (!(c(2) < 0.0)) throw FitError("fit_gaussian: curvature is not negative");

  FitResult r;
  r.kind = FitKind::Gaussian;
  r.p_c = origin - scale * c(1) / (2.0 * c(2));
  r.sigma = -scale * scale / c(2);
  CompensatedSum num, den;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double res = y[i] - (c(0) + c(1) * u[i] + c(2) * u[i] * u[i]);
    num += w[i] * res * res;
    den += w[i];
  }
  r.rms_log_residual = std::sqrt(num.value() / den.value());
  r.p_min = dist[s.first].p;
  r.p_max = dist[s.last].p;
  r.n_points = total;
  r.flagged = r.rms_log_residual > options.residual_ceiling;
  return r;
}

std::vector<double> fit_polynomial(std::span<const double> x,
                                   std::span<const double> y, int degree) {
  if (x.size() != y.size() || static_cast<int>(x.size()) <= degree) {
    throw FitError("fit_polynomial: need more points than the degree");
  }
  // Centre x so that high-degree columns stay well conditioned.
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double spread = 0.0;
  for (double v : x) spread = std::max(spread, std::abs(v - mean));
  if (spread == 0.0) spread = 1.0;
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] - mean) / spread;
  const auto c = weighted_polyfit(u, y, {}, degree);

  // Expand sum_d c_d ((x - mean)/spread)^d back into powers of x.
  std::vector<double> out(degree + 1, 0.0);
  for (int d = 0; d <= degree; ++d) {
    double binom = 1.0;
    for (int j = 0; j <= d; ++j) {
      // term: c_d / spread^d * C(d, j) x^j (-mean)^(d - j)
      out[j] += c(d) / std::pow(spread, d) * binom * std::pow(-mean, d - j);
      binom = binom * (d - j) / (j + 1);
    }
  }
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto c = fit_polynomial(x, y, 1);
  LineFit f{c[1], c[0], 0.0};
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

std::vector<std::pair<long, double>> second_difference(
    const ObservableSeries& series, SeriesQuantity which) {
  const auto& e = series.entries;
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i].t - e[i - 1].t != 1) {
      throw SpacingError("second_difference: series must be recorded every "
                         "kick (gap at t=" + std::to_string(e[i].t) + ")");
    }
  }
  auto value = [which](const ObservableRecord& r) {
    switch (which) {
      case SeriesQuantity::MeanP:
        return r.mean_p;
      case SeriesQuantity::MeanP2:
        return r.mean_p2;
      case SeriesQuantity::Otoc:
        return r.otoc;
    }
    return 0.0;
  };
  std::vector<std::pair<long, double>> out;
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    out.emplace_back(e[i].t,
                     value(e[i + 1]) - 2.0 * value(e[i]) + value(e[i - 1]));
  }
  return out;
}

}  // namespace nqkr::analysis
