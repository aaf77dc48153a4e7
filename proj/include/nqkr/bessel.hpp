#pragma once

#include <array>

// Modified Bessel functions of the first kind I_m(x) for integer orders
// 0..3 and real x >= 0.
//
// Two evaluation branches share the work:
//   x <= kSwitchPoint : ascending power series sum_k (x/2)^{2k+m} / (k!(k+m)!)
//   x >  kSwitchPoint : Hankel asymptotic expansion of e^{-x} I_m(x),
//                       summed until the terms fall below double precision.
// The scaled form e^{-x} I_m(x) is what callers should use whenever x can
// be large; the unscaled form throws OverflowError once e^x leaves the
// double range.
namespace nqkr::bessel {

inline constexpr int kMaxOrder = 3;

// Largest argument handled by the power series. At x = 20 the smallest
// asymptotic term is ~e^{-2x} ~ 4e-18, below double epsilon.
inline constexpr double kSwitchPoint = 20.0;

enum class Branch { SeriesSmallX, ScaledAsymptoticLargeX };

struct BesselRegime {
  Branch kind;
  double switch_point;
};

BesselRegime regime_for(double x);

double bessel_i(int m, double x);
double bessel_i_scaled(int m, double x);

// I_1(x) / I_0(x), in [0, 1). Never forms an unscaled Bessel value.
double ratio_i1_i0(double x);

// {e^{-x} I_0(x), ..., e^{-x} I_3(x)} in a single pass.
std::array<double, 4> scaled_orders(double x);

// log I_0(x) without overflow.
double log_i0(double x);

}  // namespace nqkr::bessel
