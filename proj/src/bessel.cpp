#include "nqkr/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nqkr/errors.hpp"

namespace nqkr::bessel {
namespace {

constexpr double kTermTolerance = 1e-17;

void check_domain(int m, double x) {
  if (m < 0 || m > kMaxOrder) {
    throw DomainError("bessel: order " + std::to_string(m) + " outside 0.." +
                      std::to_string(kMaxOrder));
  }
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel: argument must be finite and >= 0");
  }
}

// Sum of the ascending series starting at term index `first_k`.
double series(int m, double x, int first_k) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;
  for (int j = 1; j <= m; ++j) term *= half / j;
  if (term == 0.0) return 0.0;
  double sum = 0.0;
  for (int k = 0;; ++k) {
    if (k >= first_k) sum += term;
    term *= q / ((k + 1.0) * (k + 1.0 + m));
    if (term < kTermTolerance * sum || term == 0.0) break;
  }
  return sum;
}

// e^{-x} I_m(x) from the Hankel expansion, x > kSwitchPoint.
double asymptotic_scaled(int m, double x) {
  const double mu = 4.0 * m * m;
  const double eight_x = 8.0 * x;
  double term = 1.0;
  double sum = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * eight_x);
    const double mag = std::abs(term);
    if (mag > previous) break;  // divergent tail of the asymptotic series
    sum += term;
    if (mag < kTermTolerance * std::abs(sum)) break;
    previous = mag;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

BesselRegime regime_for(double x) {
  return {x <= kSwitchPoint ? Branch::SeriesSmallX
                            : Branch::ScaledAsymptoticLargeX,
          kSwitchPoint};
}

double bessel_i_scaled(int m, double x) {
  check_domain(m, x);
  if (x <= kSwitchPoint) return series(m, x, 0) * std::exp(-x);
  return asymptotic_scaled(m, x);
}

double bessel_i(int m, double x) {
  check_domain(m, x);
  if (x <= kSwitchPoint) return series(m, x, 0);
  const double scaled = asymptotic_scaled(m, x);
  const double value = x < 700.0 ? scaled * std::exp(x)
                                 : std::exp(x + std::log(scaled));
  if (!std::isfinite(value)) {
    throw OverflowError("bessel_i: I_" + std::to_string(m) + "(" +
                        std::to_string(x) +
                        ") overflows; use bessel_i_scaled");
  }
  return value;
}

double ratio_i1_i0(double x) {
  check_domain(0, x);
  if (x == 0.0) return 0.0;
  if (x <= kSwitchPoint) return series(1, x, 0) / series(0, x, 0);
  return asymptotic_scaled(1, x) / asymptotic_scaled(0, x);
}

std::array<double, 4> scaled_orders(double x) {
  check_domain(0, x);
  std::array<double, 4> out{};
  for (int m = 0; m <= kMaxOrder; ++m) {
    out[m] = x <= kSwitchPoint ? series(m, x, 0) * std::exp(-x)
                               : asymptotic_scaled(m, x);
  }
  return out;
}

double log_i0(double x) {
  check_domain(0, x);
  if (x <= kSwitchPoint) return std::log1p(series(0, x, 1));
  return x + std::log(asymptotic_scaled(0, x));
}

}  // namespace nqkr::bessel
