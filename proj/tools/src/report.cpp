#include "wfc_cli/report.hpp"

#include <stdexcept>
#include <string>

#include "wfc/analysis.hpp"
#include "wfc_cli/table.hpp"

namespace wfc::cli {

namespace {

void line(std::ostream& out, const char* key, double value) {
  out << key << " = " << format_number(value) << '\n';
}

void line(std::ostream& out, const char* key, const std::optional<double>& value) {
  out << key << " = " << (value ? format_number(*value) : std::string("NA")) << '\n';
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

void run_point(const RaceParams& params, const std::optional<WindfallClause>& clause,
               std::ostream& out) {
  validate(params);
  if (clause) validate(*clause);

  out << "n = " << params.n << '\n';
  line(out, "mu", params.mu);
  line(out, "e", params.e);
  line(out, "disaster_risk", disaster_risk(params));
  line(out, "expected_safety", expected_safety(params));
  line(out, "expected_payoff", expected_payoff(params));
  line(out, "early_limit", early_donation_enmity_limit(params));
  if (params.e > 0.0) {
    const double avg = averaged_late_limit(params);
    line(out, "late_limit_avg", avg);
    line(out, "limit_gap", avg - early_donation_enmity_limit(params));
  } else {
    line(out, "late_limit_avg", std::nullopt);
    line(out, "limit_gap", std::nullopt);
  }

  if (!clause) {
    out << "verdict = NO CLAUSE\n";
    return;
  }
  const ClauseFactors f = clause_factors(*clause);
  line(out, "tau", clause->tau);
  line(out, "e_wc", clause->e_wc);
  line(out, "lambda_pi", f.lambda_pi);
  line(out, "lambda_e", f.lambda_e);
  line(out, "wc_expected_payoff", wc_expected_payoff(params, *clause));
  line(out, "indifference_tau", early_indifference_tau(params, clause->e_wc));
  out << "verdict = " << (early_is_rational(params, *clause) ? "RATIONAL" : "NOT RATIONAL") << '\n';
}

void run_limits(const RaceParams& params, std::optional<double> stop, std::optional<double> ewc,
                std::ostream& out) {
  validate(params);
  if (stop) check_unit(*stop, "stop");
  if (ewc) check_unit(*ewc, "ewc");
  if (ewc && !stop) throw std::invalid_argument("--ewc needs --stop");

  line(out, "early_limit", early_donation_enmity_limit(params));
  if (params.e > 0.0) {
    line(out, "late_limit_avg", averaged_late_limit(params));
    line(out, "limit_gap", limit_gap(params));
  } else {
    line(out, "late_limit_avg", std::nullopt);
    line(out, "limit_gap", std::nullopt);
  }
  if (!stop) return;

  line(out, "s_top", *stop);
  line(out, "late_limit", late_limit(*stop));
  if (!ewc) return;

  const RationalInterval b = late_rational_bounds(*stop, *ewc);
  line(out, "e_wc", *ewc);
  line(out, "lower_bound", b.lower);
  line(out, "upper_bound", b.upper);
  out << "rational_exists = " << (b.empty ? 0 : 1) << '\n';
  line(out, "optimal_tau", late_optimal_tau(*stop, *ewc));
}

}  // namespace wfc::cli
