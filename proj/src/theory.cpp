#include "nqkr/theory.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "nqkr/bessel.hpp"
#include "nqkr/errors.hpp"

namespace nqkr::theory {
namespace {

constexpr double kPi = std::numbers::pi;

// Bessel quantities at x = lambda t / 2 pi, all as ratios to I_0.
struct Ratios {
  double x = 0.0;
  double r1 = 0.0;         // I_1 / I_0
  double r2 = 0.0;         // I_2 / I_0
  double r3 = 0.0;         // I_3 / I_0
  double r1_over_x = 0.5;  // (I_1 / I_0) / x, -> 1/2 as x -> 0
};

Ratios ratios_at(const ModelParams& params, double t) {
  if (params.lambda < 0.0) {
    throw DomainError("theory: negative lambda is not supported");
  }
  if (!(t >= 0.0)) throw DomainError("theory: t must be >= 0");
  Ratios r;
  r.x = params.lambda * t / (2.0 * kPi);
  if (r.x == 0.0) return r;
  const auto s = bessel::scaled_orders(r.x);
  r.r1 = s[1] / s[0];
  r.r2 = s[2] / s[0];
  r.r3 = s[3] / s[0];
  r.r1_over_x = r.r1 / r.x;
  return r;
}

struct Shape {
  double k_sin;    // K sin(phi)
  double bracket;  // K^2 cos(2 phi) + lambda^2
};

Shape shape_of(const ModelParams& p) {
  return {p.kick_k * std::sin(p.phi),
          p.kick_k * p.kick_k * std::cos(2.0 * p.phi) + p.lambda * p.lambda};
}

// 1 + I_2/I_0 - 2 (I_1/I_0)^2, i.e. twice d(I_1/I_0)/dx.
double growth_factor(const Ratios& r) { return 1.0 + r.r2 - 2.0 * r.r1 * r.r1; }

// With r = I_1/I_0 and x = lambda t / 2 pi every curve is a combination of
//   x r          (mean momentum and the linear part of the energy)
//   x^2 (1-r^2)  (the quadratic part of the variance)
// and the second derivatives in t reduce to their second derivatives in x.
// At large x both grow linearly and their curvatures are O(x^-3), so the
// direct formulas cancel to a few digits; there the 1/x expansions are used.
constexpr double kExpansionSwitch = 25.0;
constexpr int kTerms = 32;

struct Expansion {
  std::array<double, kTerms> r{};  // I_1/I_0 = sum r_k x^-k
  std::array<double, kTerms> w{};  // 1 - (I_1/I_0)^2 = sum w_k x^-k
};

Expansion make_expansion() {
  // Hankel coefficients of e^{-x} sqrt(2 pi x) I_m(x) in powers of 1/x.
  auto hankel = [](int m) {
    std::array<double, kTerms> c{};
    c[0] = 1.0;
    const double mu = 4.0 * m * m;
    for (int k = 1; k < kTerms; ++k) {
      const double odd = 2.0 * k - 1.0;
      c[k] = -c[k - 1] * (mu - odd * odd) / (8.0 * k);
    }
    return c;
  };
  const auto i0 = hankel(0), i1 = hankel(1);
  Expansion e;
  for (int k = 0; k < kTerms; ++k) {
    double acc = i1[k];
    for (int j = 1; j <= k; ++j) acc -= i0[j] * e.r[k - j];
    e.r[k] = acc;
  }
  for (int k = 0; k < kTerms; ++k) {
    double sq = 0.0;
    for (int j = 0; j <= k; ++j) sq += e.r[j] * e.r[k - j];
    e.w[k] = (k == 0 ? 1.0 : 0.0) - sq;
  }
  return e;
}

struct Curvatures {
  double linear;     // d^2/dx^2 [x r]
  double quadratic;  // d^2/dx^2 [x^2 (1 - r^2)]
};

Curvatures curvatures(const Ratios& r) {
  if (r.x < kExpansionSwitch) {
    const double curvature = 0.25 * (3.0 * r.r1 - r.r3) +
                             1.5 * r.r1 * r.r2 - 2.0 * r.r1 * r.r1 * r.r1;
    // Using r' = w - r/x and w' = 2 r^2/x - 2 r w for w = 1 - r^2.
    const double x = r.x, a = r.r1, w = 1.0 - a * a;
    return {growth_factor(r) - x * curvature,
            2.0 - 2.0 * x * a * w - 2.0 * x * x * w * w +
                4.0 * x * x * a * a * w - 4.0 * x * a * a * a};
  }
  static const Expansion e = make_expansion();
  const double y = 1.0 / r.x;
  // Sum from the smallest terms up.
  double lin = 0.0, quad = 0.0;
  for (int k = kTerms - 1; k >= 2; --k) {
    const double yk = std::pow(y, k);
    lin += e.r[k] * k * (k - 1.0) * yk * y;
    if (k >= 3) quad += e.w[k] * (k - 1.0) * (k - 2.0) * yk;
  }
  return {lin, quad};
}

TheoryValues evaluate_with(const ModelParams& p, double t, double eps,
                           const Ratios& r) {
  const Shape sh = shape_of(p);
  const double t2 = t * t;
  const double ks2 = sh.k_sin * sh.k_sin;
  TheoryValues v;
  v.mean_p = -sh.k_sin * r.r1 * t;
  // (2 pi / lambda)(I_1/I_0) t == t^2 (I_1/I_0)/x, finite at lambda = 0.
  const double linear = t2 * r.r1_over_x * sh.bracket;
  v.mean_p2 = ks2 * t2 + linear;
  v.otoc = eps * eps * (ks2 * t2 * (1.0 - r.r1 * r.r1) + linear);
  const Curvatures c = curvatures(r);
  v.s_p = -sh.k_sin * p.lambda * c.linear / (2.0 * kPi);
  v.s_e = 2.0 * ks2 + sh.bracket * c.linear;
  v.dp_dt = -sh.k_sin * (0.5 * r.x * growth_factor(r) + r.r1);
  // Equal to eps^2 [S_E - 2 (d<p>/dt)^2 - 2 <p> S_p], without the
  // cancellation between those terms at late times.
  v.s_c = eps * eps * (ks2 * c.quadratic + sh.bracket * c.linear);
  return v;
}

}  // namespace

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Small:
      return "small";
    case Regime::Crossover:
      return "crossover";
    case Regime::Large:
      return "large";
  }
  return "unknown";
}

double t_c(const ModelParams& params) {
  if (params.lambda == 0.0) {
    throw DomainError("t_c: undefined for lambda = 0 (no crossover)");
  }
  return 2.0 * kPi / std::abs(params.lambda);
}

Regime classify(const ModelParams& params, double t) {
  if (params.lambda == 0.0) return Regime::Small;
  const double tc = t_c(params);
  if (t < 0.1 * tc) return Regime::Small;
  if (t > 10.0 * tc) return Regime::Large;
  return Regime::Crossover;
}

TheoryValues evaluate(const ModelParams& params, double t, double epsilon) {
  return evaluate_with(params, t, epsilon, ratios_at(params, t));
}

double mean_p_theory(const ModelParams& params, double t) {
  return evaluate(params, t, 0.0).mean_p;
}

double mean_p2_theory(const ModelParams& params, double t) {
  return evaluate(params, t, 0.0).mean_p2;
}

double otoc_theory(const ModelParams& params, double t, double epsilon) {
  return evaluate(params, t, epsilon).otoc;
}

double s_p_theory(const ModelParams& params, double t) {
  return evaluate(params, t, 0.0).s_p;
}

double s_e_theory(const ModelParams& params, double t) {
  return evaluate(params, t, 0.0).s_e;
}

double dp_dt_theory(const ModelParams& params, double t) {
  return evaluate(params, t, 0.0).dp_dt;
}

double s_c_theory(const ModelParams& params, double t, double epsilon) {
  return evaluate(params, t, epsilon).s_c;
}

TheoryPoint asymptotic_regime_values(const ModelParams& params, double t,
                                     double epsilon) {
  TheoryPoint point;
  point.t = t;
  point.exact = evaluate(params, t, epsilon);
  point.regime = classify(params, t);

  const Shape sh = shape_of(params);
  const double k2 = params.kick_k * params.kick_k;
  const double l = std::abs(params.lambda);
  const double l2 = l * l;
  const double eps2 = epsilon * epsilon;
  TheoryValues a;
  switch (point.regime) {
    case Regime::Small:
      a.mean_p = -sh.k_sin * l * t * t / (4.0 * kPi);
      a.dp_dt = -sh.k_sin * l * t / (2.0 * kPi);
      a.mean_p2 = 0.5 * (k2 + l2) * t * t;
      a.otoc = eps2 * a.mean_p2;
      a.s_p = -sh.k_sin * l / (2.0 * kPi);
      a.s_e = k2 + l2;
      a.s_c = eps2 * (k2 + l2);
      point.asymptotic = a;
      break;
    case Regime::Large:
      a.mean_p = -sh.k_sin * (t - kPi / l);
      a.dp_dt = -sh.k_sin;
      a.mean_p2 = sh.k_sin * sh.k_sin * t * t + 2.0 * kPi * t * sh.bracket / l;
      a.otoc = (2.0 * kPi * eps2 / l) *
               (0.5 * (1.0 + std::cos(2.0 * params.phi)) * k2 + l2) * t;
      a.s_p = 0.0;
      a.s_e = 2.0 * sh.k_sin * sh.k_sin;
      a.s_c = 0.0;
      point.asymptotic = a;
      break;
    case Regime::Crossover:
      break;
  }
  return point;
}

}  // namespace nqkr::theory
