#pragma once

#include <optional>
#include <string_view>

#include "nqkr/model.hpp"

// Closed-form resonant observables as functions of continuous time t.
// Every Bessel function enters through x = lambda t / 2 pi via scaled
// ratios, so t may be arbitrarily large. lambda = 0 is handled as the exact
// limit; negative lambda is rejected with DomainError.
namespace nqkr::theory {

enum class Regime { Small, Crossover, Large };

std::string_view to_string(Regime r);

struct TheoryValues {
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  double otoc = 0.0;
  double s_p = 0.0;
  double s_e = 0.0;
  double s_c = 0.0;
  double dp_dt = 0.0;
};

struct TheoryPoint {
  double t = 0.0;
  TheoryValues exact;
  // Limiting forms for the small or large regime; empty in the crossover.
  std::optional<TheoryValues> asymptotic;
  Regime regime = Regime::Small;
};

// 2 pi / lambda; DomainError when lambda == 0.
double t_c(const ModelParams& params);

// small iff t < 0.1 t_c, large iff t > 10 t_c. Always small when lambda == 0.
Regime classify(const ModelParams& params, double t);

double mean_p_theory(const ModelParams& params, double t);
double mean_p2_theory(const ModelParams& params, double t);
double otoc_theory(const ModelParams& params, double t, double epsilon);
double s_p_theory(const ModelParams& params, double t);
double s_e_theory(const ModelParams& params, double t);
double dp_dt_theory(const ModelParams& params, double t);
double s_c_theory(const ModelParams& params, double t, double epsilon);

TheoryValues evaluate(const ModelParams& params, double t, double epsilon);

TheoryPoint asymptotic_regime_values(const ModelParams& params, double t,
                                     double epsilon);

}  // namespace nqkr::theory
