#include "nqkr/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>

#include "json.hpp"
#include "nqkr/analysis.hpp"
#include "nqkr/csv.hpp"
#include "nqkr/errors.hpp"
#include "nqkr/evolve.hpp"
#include "nqkr/observables.hpp"
#include "nqkr/theory.hpp"

namespace nqkr::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path prepare_out(const RunConfig& config) {
  const fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(); }

void write_distribution(const fs::path& path, const QuantumState& state) {
  auto out = open_out(path);
  out << "n,weight\n";
  for (std::size_t k = 0; k < state.amplitudes.size(); ++k) {
    out << state.grid.index(k) << ',' << Num{std::norm(state.amplitudes[k])}
        << '\n';
  }
}

std::vector<double> theory_grid(const RunConfig& c) {
  std::vector<double> ts;
  const double hi = static_cast<double>(c.t_max);
  if (c.theory_points == 0) {
    for (long t = static_cast<long>(std::ceil(c.theory_t_min)); t <= c.t_max; ++t) {
      ts.push_back(static_cast<double>(t));
    }
  } else if (c.theory_points == 1) {
    ts.push_back(c.theory_t_min);
  } else {
    const int n = c.theory_points;
    for (int i = 0; i < n; ++i) {
      const double f = static_cast<double>(i) / (n - 1);
      ts.push_back(c.theory_spacing == "log"
                       ? c.theory_t_min * std::pow(hi / c.theory_t_min, f)
                       : c.theory_t_min + f * (hi - c.theory_t_min));
    }
    ts.back() = hi;
  }
  return ts;
}

json fit_to_json(const analysis::FitResult& f) {
  json j;
  j["kind"] = analysis::to_string(f.kind);
  if (f.kind == analysis::FitKind::Exponential) {
    j["xi"] = f.xi;
    j["xi_left"] = f.xi_left;
    j["xi_right"] = f.xi_right;
    j["p_peak"] = f.p_c;
  } else {
    j["p_c"] = f.p_c;
    j["sigma"] = f.sigma;
  }
  j["rms_log_residual"] = f.rms_log_residual;
  j["support"] = {f.p_min, f.p_max};
  j["n_points"] = f.n_points;
  j["flagged"] = f.flagged;
  return j;
}

struct GrowthLaws {
  double phi = 0.0;
  double pt_residual = 0.0;
  double mean_p_slope = 0.0;
  double mean_p_max_over_t = 0.0;
  double mean_p2_quadratic = 0.0;
  double mean_p2_slope = 0.0;
  double mean_p2_exponent = 0.0;
  double otoc_slope = 0.0;
  double otoc_exponent = 0.0;
};

double loglog_exponent(const std::vector<double>& t,
                       const std::vector<double>& f) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (f[i] > 0.0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(f[i]));
    }
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return analysis::fit_line(lx, ly).slope;
}

GrowthLaws growth_laws(const RunConfig& c, double phi) {
  ModelParams p = c.model;
  p.phi = phi;
  const auto run = propagate_resolved(p, c.table1_t_max,
                                      PropagationOptions{1, {}}, c.max_modes);
  std::vector<double> t, mp, mp2, oc;
  GrowthLaws g;
  g.phi = phi;
  g.pt_residual = pt_symmetry_residual(p);
  for (const auto& e : run.result.series.entries) {
    if (e.t > 0) {
      g.mean_p_max_over_t =
          std::max(g.mean_p_max_over_t, std::abs(e.mean_p) / e.t);
    }
    if (e.t < c.table1_t_max - c.table1_window) continue;
    t.push_back(static_cast<double>(e.t));
    mp.push_back(e.mean_p);
    mp2.push_back(e.mean_p2);
    oc.push_back(e.otoc);
  }
  g.mean_p_slope = analysis::fit_line(t, mp).slope;
  g.mean_p2_quadratic = analysis::fit_polynomial(t, mp2, 2)[2];
  g.mean_p2_slope = analysis::fit_line(t, mp2).slope;
  g.mean_p2_exponent = loglog_exponent(t, mp2);
  g.otoc_slope = analysis::fit_line(t, oc).slope;
  g.otoc_exponent = loglog_exponent(t, oc);
  return g;
}

}  // namespace

Paths cmd_evolve(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto dir = prepare_out(config);
  const long every = config.record_every > 0
                         ? config.record_every
                         : default_record_every(config.t_max);
  PropagationOptions options{every, {}};
  if (config.write_snapshots) {
    for (long s : config.snapshots) {
      if (s <= config.t_max) options.snapshot_times.push_back(s);
    }
  }
  const auto run =
      propagate_resolved(config.model, config.t_max, options, config.max_modes);
  log << "evolve: t_max=" << config.t_max << " n_modes=" << run.n_modes
      << " records=" << run.result.series.size() << '\n';

  ModelParams params = config.model;
  params.n_modes = run.n_modes;
  const bool resonant = params.at_resonance();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  Paths written;
  const auto csv = dir / "evolve.csv";
  {
    auto out = open_out(csv);
    out << "t,log_norm,mean_p,mean_p2,otoc,mean_p_theory,mean_p2_theory,"
           "otoc_theory\n";
    for (const auto& e : run.result.series.entries) {
      const double t = static_cast<double>(e.t);
      const auto th = resonant ? theory::evaluate(params, t, params.epsilon)
                               : theory::TheoryValues{nan, nan, nan, nan,
                                                      nan, nan, nan};
      out << e.t << ',' << Num{e.log_norm} << ',' << Num{e.mean_p} << ','
          << Num{e.mean_p2} << ',' << Num{e.otoc} << ',' << Num{th.mean_p}
          << ',' << Num{th.mean_p2} << ',' << Num{th.otoc} << '\n';
    }
  }
  written.push_back(csv);
  for (const auto& s : run.result.snapshots) {
    const auto path = dir / ("snapshot_t" + std::to_string(s.t) + ".csv");
    write_distribution(path, s);
    written.push_back(path);
  }
  return written;
}

Paths cmd_theory(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto dir = prepare_out(config);
  const auto grid = theory_grid(config);
  const auto csv = dir / "theory.csv";
  auto out = open_out(csv);
  out << "t,mean_p,mean_p2,otoc,s_p,s_e,s_c,dp_dt,regime\n";
  for (double t : grid) {
    const auto v = theory::evaluate(config.model, t, config.model.epsilon);
    out << Num{t} << ',' << Num{v.mean_p} << ',' << Num{v.mean_p2} << ','
        << Num{v.otoc} << ',' << Num{v.s_p} << ',' << Num{v.s_e} << ','
        << Num{v.s_c} << ',' << Num{v.dp_dt} << ','
        << theory::to_string(theory::classify(config.model, t)) << '\n';
  }
  log << "theory: " << grid.size() << " rows\n";
  return {csv};
}

Paths cmd_sweep(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto dir = prepare_out(config);
  std::vector<long> ts;
  for (long t = config.sweep_t_min; t <= config.sweep_t_max;
       t += config.sweep_t_step) {
    ts.push_back(t);
  }
  std::vector<double> lambdas;
  const int n = config.sweep_lambda_count;
  for (int i = 0; i < n; ++i) {
    lambdas.push_back(n == 1 ? config.sweep_lambda_min
                             : config.sweep_lambda_min +
                                   (config.sweep_lambda_max -
                                    config.sweep_lambda_min) *
                                       i / (n - 1));
  }
  std::vector<analysis::DiagramSource> sources;
  if (config.sweep_source != "simulation") {
    sources.push_back(analysis::DiagramSource::Theory);
  }
  if (config.sweep_source != "theory") {
    sources.push_back(analysis::DiagramSource::Simulation);
  }
  const analysis::DiagramQuantity quantities[] = {
      analysis::DiagramQuantity::SpOverLambda, analysis::DiagramQuantity::SE,
      analysis::DiagramQuantity::SCOverEps2};
  analysis::SweepOptions options;
  options.max_modes = config.max_modes;

  // [source][quantity]
  std::vector<std::vector<analysis::PhaseDiagram>> diagrams;
  for (auto src : sources) {
    diagrams.push_back(analysis::sweep_phase_diagrams(ts, lambdas, config.model,
                                                      quantities, src, options));
  }

  Paths written;
  std::size_t bad_cells = 0, cells = 0;
  for (std::size_t qi = 0; qi < std::size(quantities); ++qi) {
    const std::string name(analysis::to_string(quantities[qi]));
    const auto csv = dir / ("sweep_" + name + ".csv");
    {
      auto out = open_out(csv);
      out << "t,lambda,value,source,flag\n";
      for (const auto& per_source : diagrams) {
        const auto& d = per_source[qi];
        for (std::size_t li = 0; li < d.lambda_values.size(); ++li) {
          for (std::size_t ti = 0; ti < d.t_values.size(); ++ti) {
            ++cells;
            if (d.flag(li, ti) != "ok") ++bad_cells;
            out << d.t_values[ti] << ',' << Num{d.lambda_values[li]} << ','
                << Num{d.at(li, ti)} << ',' << analysis::to_string(d.source)
                << ',' << d.flag(li, ti) << '\n';
          }
        }
      }
    }
    written.push_back(csv);

    const auto gp = dir / ("sweep_" + name + ".gp");
    {
      auto out = open_out(gp);
      out << "# Heatmap of " << name << " over (t, lambda) with t_c = 2 pi / lambda.\n"
          << "set datafile separator ','\n"
          << "set terminal pngcairo size 900,700\n"
          << "set xlabel 't (kicks)'\n"
          << "set ylabel 'lambda'\n"
          << "set logscale x\n"
          << "set key off\n";
      for (auto src : sources) {
        const std::string s(analysis::to_string(src));
        out << "set output 'sweep_" << name << "_" << s << ".png'\n"
            << "set title '" << name << " (" << s << ")'\n"
            << "plot \"< awk -F, 'NR > 1 && $4 == \\\"" << s
            << "\\\"' sweep_" << name << ".csv\" using 1:2:3 with image, \\\n"
            << "     2*pi/x with lines dashtype 2 linecolor rgb 'white'\n";
      }
    }
    written.push_back(gp);
  }
  log << "sweep: " << ts.size() << " t x " << lambdas.size() << " lambda, "
      << bad_cells << "/" << cells << " flagged cells\n";
  if (cells > 0 && bad_cells == cells) {
    throw ResolutionError("sweep: every cell failed", 0, 0.0);
  }
  return written;
}

Paths cmd_fit(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto dir = prepare_out(config);
  auto times = config.snapshots;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.empty()) throw ConfigError("fit: no snapshot times requested");

  const long t_end = times.back();
  const auto run = propagate_resolved(
      config.model, t_end, PropagationOptions{std::max(1L, t_end), times},
      config.max_modes);
  ModelParams params = config.model;
  params.n_modes = run.n_modes;
  log << "fit: propagated to t=" << t_end << " with n_modes=" << run.n_modes
      << '\n';

  const double tc = params.lambda > 0.0 ? theory::t_c(params)
                                        : std::numeric_limits<double>::infinity();
  json report;
  report["params"] = {{"kick_k", params.kick_k},     {"lambda", params.lambda},
                      {"phi", params.phi},           {"hbar_eff", params.hbar_eff},
                      {"epsilon", params.epsilon},   {"n_modes", params.n_modes}};
  report["snapshots"] = json::array();
  std::vector<double> drift_t, drift_pc;
  Paths written;

  for (const auto& state : run.result.snapshots) {
    json entry;
    entry["t"] = state.t;
    entry["distribution_file"] = nullptr;
    if (config.write_snapshots) {
      const auto path = dir / ("snapshot_t" + std::to_string(state.t) + ".csv");
      write_distribution(path, state);
      entry["distribution_file"] = path.string();
      written.push_back(path);
    }
    std::vector<analysis::FitKind> kinds;
    if (config.fit_kind == "exponential" || config.fit_kind == "both") {
      kinds.push_back(analysis::FitKind::Exponential);
    }
    if (config.fit_kind == "gaussian" || config.fit_kind == "both") {
      kinds.push_back(analysis::FitKind::Gaussian);
    }
    if (config.fit_kind == "auto") {
      kinds.push_back(static_cast<double>(state.t) < tc
                          ? analysis::FitKind::Exponential
                          : analysis::FitKind::Gaussian);
    }
    const auto dist = momentum_distribution(state);
    entry["fits"] = json::array();
    for (auto kind : kinds) {
      try {
        const auto f = kind == analysis::FitKind::Exponential
                           ? analysis::fit_exponential(dist)
                           : analysis::fit_gaussian(dist);
        entry["fits"].push_back(fit_to_json(f));
        if (kind == analysis::FitKind::Gaussian) {
          drift_t.push_back(static_cast<double>(state.t));
          drift_pc.push_back(f.p_c);
        }
      } catch (const FitError& e) {
        entry["fits"].push_back(
            {{"kind", analysis::to_string(kind)}, {"error", e.what()}});
      }
    }
    report["snapshots"].push_back(entry);
  }

  if (drift_t.size() >= 2) {
    const auto line = analysis::fit_line(drift_t, drift_pc);
    const double mid = 0.5 * (drift_t.front() + drift_t.back());
    const double theory_d = params.at_resonance()
                                ? theory::dp_dt_theory(params, mid)
                                : std::numeric_limits<double>::quiet_NaN();
    report["drift"] = {{"times", drift_t},
                       {"p_c", drift_pc},
                       {"slope", line.slope},
                       {"intercept", line.intercept},
                       {"r_squared", line.r_squared},
                       {"midpoint_t", mid},
                       {"dp_dt_theory", number_or_null(theory_d)},
                       {"relative_difference",
                        number_or_null((line.slope - theory_d) / theory_d)}};
  } else {
    report["drift"] = nullptr;
  }

  const auto path = dir / "fit_report.json";
  open_out(path) << report.dump(2) << '\n';
  written.insert(written.begin(), path);
  log << "fit: " << run.result.snapshots.size() << " snapshots\n";
  return written;
}

Paths cmd_table1(const RunConfig& config, std::ostream& log) {
  config.validate();
  const auto dir = prepare_out(config);
  const double phis[] = {std::numbers::pi / 2.0, std::numbers::pi};
  const char* labels[] = {"pi/2", "pi"};
  const auto& m = config.model;
  const double k2 = m.kick_k * m.kick_k;
  const double l = m.lambda;
  const double eps2 = m.epsilon * m.epsilon;

  json report;
  report["t_max"] = config.table1_t_max;
  report["window"] = {config.table1_t_max - config.table1_window,
                      config.table1_t_max};
  report["rows"] = json::array();
  std::vector<GrowthLaws> laws;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto g = growth_laws(config, phis[i]);
    laws.push_back(g);
    const double s = std::sin(phis[i]);
    const double bracket = k2 * std::cos(2.0 * phis[i]) + l * l;
    json row;
    row["phi"] = labels[i];
    row["symmetry"] = g.pt_residual <= 1e-14 ? "PT" : "non-PT";
    row["pt_residual"] = g.pt_residual;
    row["mean_p_slope"] = g.mean_p_slope;
    row["mean_p_slope_theory"] = -m.kick_k * s;
    row["mean_p_max_over_t"] = g.mean_p_max_over_t;
    row["mean_p2_quadratic"] = g.mean_p2_quadratic;
    row["mean_p2_quadratic_theory"] = k2 * s * s;
    row["mean_p2_slope"] = g.mean_p2_slope;
    row["mean_p2_linear_theory"] = 2.0 * std::numbers::pi * bracket / l;
    row["mean_p2_exponent"] = number_or_null(g.mean_p2_exponent);
    row["otoc_slope"] = g.otoc_slope;
    row["otoc_slope_theory"] =
        2.0 * std::numbers::pi * eps2 / l *
        (0.5 * (1.0 + std::cos(2.0 * phis[i])) * k2 + l * l);
    row["otoc_exponent"] = number_or_null(g.otoc_exponent);
    report["rows"].push_back(row);
  }
  const auto json_path = dir / "table1.json";
  open_out(json_path) << report.dump(2) << '\n';

  const auto txt_path = dir / "table1.txt";
  {
    auto out = open_out(txt_path);
    const auto& a = report["rows"][0];
    const auto& b = report["rows"][1];
    auto line = [&](const std::string& label, const std::string& x,
                    const std::string& y) {
      out << label << " | " << x << " | " << y << '\n';
    };
    line("phase", "pi/2", "pi");
    line("symmetry class (PT residual)",
         a["symmetry"].get<std::string>() + " (" + format_number(laws[0].pt_residual) + ")",
         b["symmetry"].get<std::string>() + " (" + format_number(laws[1].pt_residual) + ")");
    line("directed current d<p>/dt", format_number(laws[0].mean_p_slope),
         format_number(laws[1].mean_p_slope) + " (max |<p>|/t " +
             format_number(laws[1].mean_p_max_over_t) + ")");
    line("energy diffusion <p^2>",
         "t^2 coeff " + format_number(laws[0].mean_p2_quadratic),
         "slope " + format_number(laws[1].mean_p2_slope));
    line("scrambling dC/dt", format_number(laws[0].otoc_slope),
         format_number(laws[1].otoc_slope));
  }
  log << "table1: wrote " << json_path.string() << '\n';
  return {json_path, txt_path};
}

int run_command(std::string_view name, const RunConfig& config,
                std::ostream& log, std::ostream& err) {
  try {
    if (name == "evolve") {
      cmd_evolve(config, log);
    } else if (name == "theory") {
      cmd_theory(config, log);
    } else if (name == "sweep") {
      cmd_sweep(config, log);
    } else if (name == "fit") {
      cmd_fit(config, log);
    } else if (name == "table1") {
      cmd_table1(config, log);
    } else {
      err << "unknown command '" << name << "'\n";
      return kExitConfig;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const FitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace nqkr::cli
