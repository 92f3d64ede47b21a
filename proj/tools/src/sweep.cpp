#include "wfc_cli/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wfc/analysis.hpp"
#include "wfc/parallel.hpp"
#include "wfc/rng.hpp"
#include "wfc/windfall.hpp"

namespace wfc::cli {

namespace {

constexpr std::pair<FigureId, std::string_view> kFigureNames[] = {
    {FigureId::kFig1, "fig1"},   {FigureId::kFig2, "fig2"},   {FigureId::kFig3a, "fig3a"},
    {FigureId::kFig3b, "fig3b"}, {FigureId::kFig3c, "fig3c"}, {FigureId::kFig4, "fig4"},
    {FigureId::kFig5, "fig5"},   {FigureId::kCustom, "custom"},
};

std::vector<std::string_view> allowed_axes(FigureId id) {
  switch (id) {
    case FigureId::kFig1: return {"ewc", "tau"};
    case FigureId::kFig2: return {"n", "ewc", "tau"};
    case FigureId::kFig3a: return {"n"};
    case FigureId::kFig3b: return {"mu"};
    case FigureId::kFig3c: return {"e"};
    case FigureId::kFig4: return {"stop", "ewc"};
    case FigureId::kFig5: return {"e", "n", "mu"};
    case FigureId::kCustom: return {"n", "mu", "e", "tau", "ewc"};
  }
  return {};
}

bool supports_mc(FigureId id) {
  return id == FigureId::kFig3a || id == FigureId::kFig3b || id == FigureId::kFig3c ||
         id == FigureId::kFig5 || id == FigureId::kCustom;
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Axis integer_axis(std::string name, int lo, int hi) {
  Axis axis{std::move(name), {}};
  for (int v = lo; v <= hi; ++v) axis.values.push_back(v);
  return axis;
}

void check_axis_values(const Axis& axis, bool needs_positive_e) {
  if (axis.values.size() < 2) {
    throw std::invalid_argument("axis '" + axis.name + "' needs at least 2 points");
  }
  for (double v : axis.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("axis '" + axis.name + "' has a non-finite value");
    if (axis.name == "n") {
      if (v < 2.0 || v != std::floor(v) || v > 1e6) {
        throw std::invalid_argument("n must be an integer of at least 2");
      }
    } else if (axis.name == "mu") {
      if (!(v > 0.0)) throw std::invalid_argument("mu must be positive");
    } else if (axis.name == "e") {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("e must lie in [0,1]");
      if (needs_positive_e && v == 0.0) {
        throw std::invalid_argument("e must be positive for this sweep");
      }
    } else if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(axis.name + " must lie in [0,1]");
    }
  }
}

bool needs_positive_enmity(const SweepSpec& spec) {
  return spec.figure == FigureId::kFig5 || spec.figure == FigureId::kCustom || spec.sim.has_value();
}

// One grid point: fixed parameters overlaid with the swept coordinates.
struct Point {
  RaceParams params;
  double tau = 0.0;
  double ewc = 0.0;
  double stop = 0.0;
};

void assign(Point& p, std::string_view name, double v) {
  if (name == "n") p.params.n = static_cast<int>(v);
  else if (name == "mu") p.params.mu = v;
  else if (name == "e") p.params.e = v;
  else if (name == "tau") p.tau = v;
  else if (name == "ewc") p.ewc = v;
  else if (name == "stop") p.stop = v;
}

// Expected payoff under a clause, with the tau * e_wc = 1 corner taken as
// its limit along tau = 1 (nothing retained, lambda_e = 0).
struct ClauseEval {
  double lambda_pi;
  double lambda_e;
  double payoff;
};

ClauseEval evaluate_clause(const RaceParams& params, double tau, double ewc) {
  if (tau * ewc >= 1.0) return {0.0, 0.0, 0.0};
  const WindfallClause clause{tau, ewc};
  const ClauseFactors f = clause_factors(clause);
  return {f.lambda_pi, f.lambda_e, wc_expected_payoff(params, clause)};
}

}  // namespace

std::optional<FigureId> parse_figure_id(std::string_view name) {
  for (const auto& [id, text] : kFigureNames) {
    if (text == name) return id;
  }
  return std::nullopt;
}

std::string_view to_string(FigureId id) {
  for (const auto& [fid, text] : kFigureNames) {
    if (fid == id) return text;
  }
  return "unknown";
}

Axis linspace_axis(std::string name, double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("axis '" + name + "' needs at least 2 steps");
  Axis axis{std::move(name), {}};
  axis.values.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    axis.values.push_back(i + 1 == steps ? hi : lo + (hi - lo) * i / (steps - 1));
  }
  return axis;
}

Axis parse_axis(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw std::invalid_argument("axis must look like name=lo:hi:steps or name=v1,v2,...");
  }
  const std::string name(text.substr(0, eq));
  const std::string_view body = text.substr(eq + 1);
  if (body.find(':') != std::string_view::npos) {
    const auto parts = split(body, ':');
    if (parts.size() != 3) throw std::invalid_argument("range axis must be name=lo:hi:steps");
    const double steps = parse_double(parts[2]);
    if (steps != std::floor(steps)) throw std::invalid_argument("axis steps must be an integer");
    return linspace_axis(name, parse_double(parts[0]), parse_double(parts[1]),
                         static_cast<int>(steps));
  }
  Axis axis{name, {}};
  for (auto part : split(body, ',')) axis.values.push_back(parse_double(part));
  return axis;
}

SweepSpec default_spec(FigureId id) {
  SweepSpec spec;
  spec.figure = id;
  switch (id) {
    case FigureId::kFig1:
      spec.axes = {linspace_axis("ewc", 0.0, 1.0, 201), linspace_axis("tau", 0.0, 1.0, 201)};
      break;
    case FigureId::kFig2:
      spec.axes = {integer_axis("n", 2, 6), linspace_axis("ewc", 0.0, 1.0, 201),
                   linspace_axis("tau", 0.0, 1.0, 201)};
      break;
    case FigureId::kFig3a:
      spec.axes = {integer_axis("n", 2, 20)};
      break;
    case FigureId::kFig3b:
      spec.axes = {linspace_axis("mu", 0.1, 10.0, 101)};
      break;
    case FigureId::kFig3c:
      spec.axes = {linspace_axis("e", 0.0, 1.0, 101)};
      break;
    case FigureId::kFig4:
      spec.axes = {Axis{"stop", {0.0, 0.25, 0.5, 0.75, 1.0}}, linspace_axis("ewc", 0.0, 1.0, 101)};
      break;
    case FigureId::kFig5:
      spec.axes = {Axis{"e", {0.1, 0.3, 0.5, 0.7, 0.9}}, integer_axis("n", 2, 10),
                   linspace_axis("mu", 0.1, 10.0, 101)};
      break;
    case FigureId::kCustom:
      break;
  }
  return spec;
}

void override_axis(SweepSpec& spec, Axis axis) {
  const auto allowed = allowed_axes(spec.figure);
  if (std::find(allowed.begin(), allowed.end(), axis.name) == allowed.end()) {
    throw std::invalid_argument("axis '" + axis.name + "' is not swept by " +
                                std::string(to_string(spec.figure)));
  }
  for (auto& existing : spec.axes) {
    if (existing.name == axis.name) {
      existing = std::move(axis);
      return;
    }
  }
  spec.axes.push_back(std::move(axis));
}

void validate(const SweepSpec& spec) {
  validate(spec.fixed);
  if (spec.axes.empty()) throw std::invalid_argument("sweep needs at least one axis");
  const auto allowed = allowed_axes(spec.figure);
  std::vector<std::string_view> seen;
  for (const auto& axis : spec.axes) {
    if (std::find(allowed.begin(), allowed.end(), axis.name) == allowed.end()) {
      throw std::invalid_argument("axis '" + axis.name + "' is not swept by " +
                                  std::string(to_string(spec.figure)));
    }
    if (std::find(seen.begin(), seen.end(), axis.name) != seen.end()) {
      throw std::invalid_argument("axis '" + axis.name + "' given twice");
    }
    seen.push_back(axis.name);
    check_axis_values(axis, needs_positive_enmity(spec));
  }
  if (needs_positive_enmity(spec) && spec.fixed.e == 0.0 &&
      std::find(seen.begin(), seen.end(), "e") == seen.end()) {
    throw std::invalid_argument("e must be positive for this sweep");
  }
  if (spec.sim) {
    if (!supports_mc(spec.figure)) {
      throw std::invalid_argument("Monte Carlo columns are available for fig3a, fig3b, fig3c, fig5 and custom");
    }
    validate(*spec.sim);
  }
}

std::vector<std::string> figure_columns(FigureId id, bool with_mc) {
  std::vector<std::string> cols;
  switch (id) {
    case FigureId::kFig1:
    case FigureId::kFig2:
      cols = {"n", "mu", "e", "e_wc", "tau", "lambda_pi", "lambda_e", "expected_payoff",
              "baseline_payoff", "rational", "indifference_tau"};
      break;
    case FigureId::kFig3a:
    case FigureId::kFig3b:
    case FigureId::kFig3c:
      cols = {"n", "mu", "e", "early_limit"};
      if (with_mc) cols.insert(cols.end(), {"mc_expected_payoff", "mc_std_error"});
      break;
    case FigureId::kFig4:
      cols = {"s_top", "e_wc", "lower_bound", "upper_bound", "rational_exists",
              "full_safety_tau", "optimal_tau", "late_limit"};
      break;
    case FigureId::kFig5:
      cols = {"e", "n", "mu", "early_limit", "late_limit_avg", "gap"};
      if (with_mc) cols.insert(cols.end(), {"mc_late_limit_avg", "mc_std_error"});
      break;
    case FigureId::kCustom:
      cols = {"n", "mu", "e", "tau", "e_wc", "expected_safety", "expected_payoff",
              "wc_expected_payoff", "rational", "early_limit", "late_limit_avg", "gap"};
      if (with_mc) cols.insert(cols.end(), {"mc_wc_expected_payoff", "mc_std_error"});
      break;
  }
  return cols;
}

Table run_sweep(const SweepSpec& spec) {
  validate(spec);
  const bool with_mc = spec.sim.has_value();
  Table table;
  table.columns = figure_columns(spec.figure, with_mc);

  // Grid in row-major order, first axis outermost.
  std::size_t total = 1;
  for (const auto& axis : spec.axes) total *= axis.values.size();
  std::vector<std::vector<std::size_t>> index(total, std::vector<std::size_t>(spec.axes.size()));
  for (std::size_t row = 0; row < total; ++row) {
    std::size_t rem = row;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      index[row][a] = rem % spec.axes[a].values.size();
      rem /= spec.axes[a].values.size();
    }
  }
  auto point_at = [&](std::size_t row) {
    Point p{spec.fixed};
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      assign(p, spec.axes[a].name, spec.axes[a].values[index[row][a]]);
    }
    return p;
  };

  const unsigned threads = resolve_thread_count(spec.threads);

  // Indifference tau depends only on (params, e_wc); compute once per pair.
  std::map<std::tuple<int, double, double, double>, std::size_t> indifference_key;
  std::vector<std::optional<double>> indifference;
  if (spec.figure == FigureId::kFig1 || spec.figure == FigureId::kFig2) {
    std::vector<Point> unique;
    for (std::size_t row = 0; row < total; ++row) {
      const Point p = point_at(row);
      const auto key = std::make_tuple(p.params.n, p.params.mu, p.params.e, p.ewc);
      if (indifference_key.emplace(key, unique.size()).second) unique.push_back(p);
    }
    indifference.resize(unique.size());
    parallel_for(unique.size(), threads, [&](std::size_t i) {
      indifference[i] = early_indifference_tau(unique[i].params, unique[i].ewc);
    });
  }

  table.rows.resize(total);
  parallel_for(total, threads, [&](std::size_t row) {
    const Point p = point_at(row);
    const RaceParams& rp = p.params;
    std::vector<Cell>& out = table.rows[row];

    SimConfig sim;
    if (with_mc) {
      sim = *spec.sim;
      sim.seed = derive_seed(spec.sim->seed, row);
      sim.threads = 1;
    }

    switch (spec.figure) {
      case FigureId::kFig1:
      case FigureId::kFig2: {
        const ClauseEval ce = evaluate_clause(rp, p.tau, p.ewc);
        const double baseline = expected_payoff(rp);
        const bool rational = ce.payoff - baseline >= -kRationalityTolerance;
        const auto key = std::make_tuple(rp.n, rp.mu, rp.e, p.ewc);
        out = {double(rp.n), rp.mu, rp.e, p.ewc, p.tau, ce.lambda_pi, ce.lambda_e,
               ce.payoff, baseline, rational ? 1.0 : 0.0,
               indifference[indifference_key.at(key)]};
        break;
      }
      case FigureId::kFig3a:
      case FigureId::kFig3b:
      case FigureId::kFig3c: {
        out = {double(rp.n), rp.mu, rp.e, early_donation_enmity_limit(rp)};
        if (with_mc) {
          const McEstimate est = mc_expected_payoff(rp, std::nullopt, sim);
          out.insert(out.end(), {est.mean, est.std_error});
        }
        break;
      }
      case FigureId::kFig4: {
        const RationalInterval b = late_rational_bounds(p.stop, p.ewc);
        const double full_safety = p.stop >= 1.0 ? 0.0 : (1.0 - p.stop) / (1.0 - p.ewc * p.stop);
        const auto optimal = late_optimal_tau(p.stop, p.ewc);
        out = {p.stop, p.ewc, b.lower, b.upper, b.empty ? 0.0 : 1.0, full_safety,
               optimal.value_or(0.0), late_limit(p.stop)};
        break;
      }
      case FigureId::kFig5: {
        const LimitCurvePoint lc = limit_curve_point(rp, rp.mu);
        out = {rp.e, double(rp.n), rp.mu, lc.early_limit, lc.late_limit_avg, lc.gap};
        if (with_mc) {
          const McEstimate est = mc_averaged_late_limit(rp, sim);
          out.insert(out.end(), {est.mean, est.std_error});
        }
        break;
      }
      case FigureId::kCustom: {
        const ClauseEval ce = evaluate_clause(rp, p.tau, p.ewc);
        const double baseline = expected_payoff(rp);
        const LimitCurvePoint lc = limit_curve_point(rp, 0.0);
        out = {double(rp.n), rp.mu, rp.e, p.tau, p.ewc, expected_safety(rp), baseline,
               ce.payoff, ce.payoff - baseline >= -kRationalityTolerance ? 1.0 : 0.0,
               lc.early_limit, lc.late_limit_avg, lc.gap};
        if (with_mc) {
          if (p.tau * p.ewc >= 1.0) {
            out.insert(out.end(), {0.0, 0.0});
          } else {
            const McEstimate est = mc_expected_payoff(rp, WindfallClause{p.tau, p.ewc}, sim);
            out.insert(out.end(), {est.mean, est.std_error});
          }
        }
        break;
      }
    }
  });
  return table;
}

std::string render(const Table& table, OutputFormat format) {
  return format == OutputFormat::kJson ? to_json(table) : to_csv(table);
}

}  // namespace wfc::cli
