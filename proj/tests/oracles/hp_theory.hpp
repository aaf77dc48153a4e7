#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <utility>

// Mean momentum, mean energy and rescaled OTOC of the resonant rotor
// evaluated in 50-digit arithmetic with Boost's Bessel functions. Used to
// form central differences whose rounding error stays far below the
// tolerances of the derivative checks.
namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

struct HpCurves {
  Real mean_p, mean_p2, variance;
};

inline HpCurves hp_curves(double kick_k, double lambda, double phi,
                          const Real& t) {
  const Real pi = boost::math::constants::pi<Real>();
  const Real k = kick_k, l = lambda;
  const Real s = sin(Real(phi));
  const Real bracket = k * k * cos(2 * Real(phi)) + l * l;
  const Real x = l * t / (2 * pi);
  const Real r = boost::math::cyl_bessel_i(1, x) / boost::math::cyl_bessel_i(0, x);
  HpCurves c;
  c.mean_p = -k * s * r * t;
  c.mean_p2 = k * k * s * s * t * t + (2 * pi / l) * r * t * bracket;
  c.variance = c.mean_p2 - c.mean_p * c.mean_p;
  return c;
}

// (f(t+h) - 2 f(t) + f(t-h)) / h^2 for the three curves.
inline HpCurves hp_second_difference(double kick_k, double lambda, double phi,
                                     double t, double h) {
  const Real tt = t, hh = h;
  const auto a = hp_curves(kick_k, lambda, phi, tt - hh);
  const auto b = hp_curves(kick_k, lambda, phi, tt);
  const auto c = hp_curves(kick_k, lambda, phi, tt + hh);
  const Real h2 = hh * hh;
  return {(c.mean_p - 2 * b.mean_p + a.mean_p) / h2,
          (c.mean_p2 - 2 * b.mean_p2 + a.mean_p2) / h2,
          (c.variance - 2 * b.variance + a.variance) / h2};
}

// I_0 of a complex argument z from z^2 = (re, im), by its power series.
inline std::pair<Real, Real> i0_from_square(const Real& re, const Real& im) {
  Real sum_re = 1, sum_im = 0, term_re = 1, term_im = 0;
  const Real q_re = re / 4, q_im = im / 4;
  for (int k = 1; k < 2000; ++k) {
    const Real kk = Real(k) * k;
    const Real nr = (term_re * q_re - term_im * q_im) / kk;
    const Real ni = (term_re * q_im + term_im * q_re) / kk;
    term_re = nr;
    term_im = ni;
    sum_re += term_re;
    sum_im += term_im;
    if (abs(term_re) + abs(term_im) < Real("1e-60") * (abs(sum_re) + abs(sum_im))) break;
  }
  return {sum_re, sum_im};
}

// Exact rescaled OTOC 1 - |<psi|exp(-i eps p)|psi>|^2 / N^2 of the resonant
// state. The translation shifts theta by delta = 4 pi eps, and the overlap
// integral of exp(a cos + b sin) over the circle is I_0(sqrt(a^2 + b^2)).
inline Real otoc_exact(double kick_k, double lambda, double phi, double epsilon,
                       double t) {
  const Real pi = boost::math::constants::pi<Real>();
  const Real k = kick_k, l = lambda, f = phi;
  const Real tau = Real(t) / (4 * pi);
  const Real delta = 4 * pi * Real(epsilon);
  const Real a_re = tau * l * (cos(f) + cos(f - delta));
  const Real a_im = tau * k * (1 - cos(delta));
  const Real b_re = -tau * l * (sin(f) + sin(f - delta));
  const Real b_im = -tau * k * sin(delta);
  const Real z2_re = a_re * a_re - a_im * a_im + b_re * b_re - b_im * b_im;
  const Real z2_im = 2 * (a_re * a_im + b_re * b_im);
  const Real x = l * Real(t) / (2 * pi);
  const auto num = i0_from_square(z2_re, z2_im);
  const Real den = i0_from_square(x * x, 0).first;
  const Real re = num.first / den, im = num.second / den;
  return 1 - (re * re + im * im);
}

}  // namespace oracle
