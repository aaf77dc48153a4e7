#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "nqkr/analysis.hpp"
#include "nqkr/errors.hpp"
#include "nqkr/evolve.hpp"
#include "nqkr/theory.hpp"

namespace nqkr::analysis {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Row {
  // [quantity][t index]
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::string>> flags;
};

double theory_cell(DiagramQuantity q, const ModelParams& p, double t) {
  switch (q) {
    case DiagramQuantity::SpOverLambda:
      return theory::s_p_theory(p, t) / p.lambda;
    case DiagramQuantity::SE:
      return theory::s_e_theory(p, t);
    case DiagramQuantity::SCOverEps2:
      return theory::s_c_theory(p, t, 1.0);
  }
  return kNaN;
}

Row theory_row(const std::vector<long>& ts, const ModelParams& p,
               std::span<const DiagramQuantity> qs) {
  Row row;
  for (auto q : qs) {
    std::vector<double> v;
    for (long t : ts) v.push_back(theory_cell(q, p, static_cast<double>(t)));
    row.values.push_back(std::move(v));
    row.flags.emplace_back(ts.size(), "ok");
  }
  return row;
}

Row simulation_row(const std::vector<long>& ts, const ModelParams& p,
                   std::span<const DiagramQuantity> qs,
                   const SweepOptions& options) {
  Row row;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    row.values.emplace_back(ts.size(), kNaN);
    row.flags.emplace_back(ts.size(), "ok");
  }
  const long t_max = ts.empty() ? 0 : ts.back() + 1;
  ObservableSeries series;
  try {
    series = propagate_resolved(p, t_max, PropagationOptions{1, {}},
                                options.max_modes)
                 .result.series;
  } catch (const ResolutionError&) {
    for (auto& f : row.flags) std::fill(f.begin(), f.end(), "resolution");
    return row;
  }
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    SeriesQuantity sq = SeriesQuantity::MeanP;
    double scale = 1.0 / p.lambda;
    if (qs[qi] == DiagramQuantity::SE) {
      sq = SeriesQuantity::MeanP2;
      scale = 1.0;
    } else if (qs[qi] == DiagramQuantity::SCOverEps2) {
      sq = SeriesQuantity::Otoc;
      scale = 1.0 / (p.epsilon * p.epsilon);
    }
    const auto d2 = second_difference(series, sq);
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      if (ts[ti] < 1) {
        row.flags[qi][ti] = "no-stencil";
        continue;
      }
      // d2 holds t = 1, 2, ... in order.
      row.values[qi][ti] = d2[static_cast<std::size_t>(ts[ti] - 1)].second * scale;
    }
  }
  return row;
}

}  // namespace

std::string_view to_string(DiagramQuantity q) {
  switch (q) {
    case DiagramQuantity::SpOverLambda:
      return "s_p_over_lambda";
    case DiagramQuantity::SE:
      return "s_e";
    case DiagramQuantity::SCOverEps2:
      return "s_c_over_eps2";
  }
  return "unknown";
}

std::string_view to_string(DiagramSource s) {
  return s == DiagramSource::Simulation ? "simulation" : "theory";
}

int worker_count() {
  if (const char* env = std::getenv("NQKR_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<PhaseDiagram> sweep_phase_diagrams(
    std::vector<long> t_values, std::vector<double> lambda_values,
    const ModelParams& base, std::span<const DiagramQuantity> quantities,
    DiagramSource source, const SweepOptions& options) {
  if (t_values.empty() || lambda_values.empty()) {
    throw DomainError("sweep: axes must be non-empty");
  }
  std::sort(t_values.begin(), t_values.end());
  std::sort(lambda_values.begin(), lambda_values.end());
  if (t_values.front() < 0) throw DomainError("sweep: t values must be >= 0");
  if (!(lambda_values.front() > 0.0)) {
    throw DomainError("sweep: lambda values must be > 0");
  }
  base.validate();

  std::vector<Row> rows(lambda_values.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(lambda_values.size());
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < lambda_values.size();) {
      try {
        ModelParams p = base;
        p.lambda = lambda_values[i];
        rows[i] = source == DiagramSource::Theory
                      ? theory_row(t_values, p, quantities)
                      : simulation_row(t_values, p, quantities, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(
      options.workers > 0 ? options.workers : worker_count(),
      static_cast<int>(lambda_values.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<PhaseDiagram> out;
  for (std::size_t qi = 0; qi < quantities.size(); ++qi) {
    PhaseDiagram d;
    d.t_values = t_values;
    d.lambda_values = lambda_values;
    d.quantity = quantities[qi];
    d.source = source;
    for (const auto& row : rows) {
      d.values.insert(d.values.end(), row.values[qi].begin(),
                      row.values[qi].end());
      d.flags.insert(d.flags.end(), row.flags[qi].begin(), row.flags[qi].end());
    }
    out.push_back(std::move(d));
  }
  return out;
}

PhaseDiagram sweep_phase_diagram(std::vector<long> t_values,
                                 std::vector<double> lambda_values,
                                 const ModelParams& base,
                                 DiagramQuantity quantity,
                                 DiagramSource source,
                                 const SweepOptions& options) {
  const DiagramQuantity qs[] = {quantity};
  return std::move(sweep_phase_diagrams(std::move(t_values),
                                        std::move(lambda_values), base, qs,
                                        source, options)
                       .front());
}

}  // namespace nqkr::analysis
