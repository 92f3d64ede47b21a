#include "wfc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wfc/numeric.hpp"

namespace wfc {

namespace {

void check_unit(double value, const char* message) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::invalid_argument(message);
}

// Residual at (tau, e_wc) including the tau * e_wc = 1 corner, where the
// clause keeps nothing and the residual is -EPi(e).
double residual_at(const RaceParams& params, double baseline, double tau, double e_wc) {
  const double retained = 1.0 - tau * e_wc;
  if (retained <= 0.0) return -baseline;
  const double lambda_e = (1.0 - tau) / retained;
  return retained * expected_payoff({params.n, params.mu, lambda_e * params.e}) - baseline;
}

constexpr int kIndifferenceScanCells = 1024;
constexpr double kBisectionTolerance = 1e-10;
constexpr std::size_t kBisectionMaxIter = 200;

}  // namespace

double early_residual(const RaceParams& params, const WindfallClause& clause) {
  validate(params);
  validate(clause);
  return wc_expected_payoff(params, clause) - expected_payoff(params);
}

bool early_is_rational(const RaceParams& params, const WindfallClause& clause) {
  return early_residual(params, clause) >= -kRationalityTolerance;
}

std::optional<double> early_indifference_tau(const RaceParams& params, double e_wc) {
  validate(params);
  check_unit(e_wc, "e_wc must lie in [0,1]");
  const double baseline = expected_payoff(params);
  auto residual = [&](double tau) { return residual_at(params, baseline, tau, e_wc); };

  const double at_full = residual(1.0);
  if (std::abs(at_full) <= kRationalityTolerance) return 1.0;

  // Walk down from tau = 1 to the highest cell whose ends straddle zero.
  // residual(0) = 0 always, so the bottom cell is judged by its top end.
  const double step = 1.0 / kIndifferenceScanCells;
  double hi = 1.0;
  double r_hi = at_full;
  for (int cell = kIndifferenceScanCells - 1; cell > 0; --cell) {
    const double lo = cell * step;
    const double r_lo = residual(lo);
    if ((r_lo >= 0.0) != (r_hi >= 0.0)) {
      return numeric::bisect(residual, lo, hi, kBisectionTolerance, kBisectionMaxIter).root;
    }
    hi = lo;
    r_hi = r_lo;
  }
  if (r_hi < 0.0) return 0.0;  // every positive pledge loses
  return std::nullopt;
}

double early_donation_enmity_limit(const RaceParams& params) {
  return 1.0 - expected_payoff(params);
}

RationalInterval late_rational_bounds(double s_top, double e_wc) {
  check_unit(s_top, "s_top must lie in [0,1]");
  check_unit(e_wc, "e_wc must lie in [0,1]");
  if (e_wc == 0.0) return {0.0, 1.0, false};

  RationalInterval interval;
  interval.lower = std::max(0.0, (2.0 * e_wc - 1.0) / (e_wc * e_wc));
  interval.upper = std::min(1.0, (1.0 - s_top) / e_wc);
  interval.empty = e_wc > 1.0 / (1.0 + s_top);
  if (!interval.empty && interval.lower > interval.upper) {
    interval.lower = interval.upper;
  }
  return interval;
}

double late_winner_utility(double s_top, const WindfallClause& clause) {
  check_unit(s_top, "s_top must lie in [0,1]");
  const ClauseFactors f = clause_factors(clause);
  double safety = 1.0;
  if (s_top < 1.0 && f.lambda_e > 0.0) safety = std::min(1.0, s_top / f.lambda_e);
  return f.lambda_pi * safety;
}

std::optional<double> late_optimal_tau(double s_top, double e_wc) {
  const RationalInterval bounds = late_rational_bounds(s_top, e_wc);
  if (bounds.empty) return std::nullopt;
  if (s_top >= 1.0) return 0.0;
  return (1.0 - s_top) / (1.0 - e_wc * s_top);
}

double late_limit(double s_top) {
  check_unit(s_top, "s_top must lie in [0,1]");
  return 1.0 / (1.0 + s_top);
}

double averaged_late_limit(const RaceParams& params) {
  validate(params);
  if (!(params.e > 0.0)) {
    throw std::domain_error("averaged_late_limit: enmity must be positive");
  }
  const double n = params.n;
  const double mu = params.mu;
  const double e = params.e;
  auto integrand = [=](double x) {
    const double density = n / mu * std::pow(1.0 - x / mu, n - 1.0);
    return density / (1.0 + std::min(1.0, x / e));
  };

  // The min(1, x / e) kink sits at x = e.
  constexpr double tol = 1e-10;
  if (e >= mu) return numeric::adaptive_simpson(integrand, 0.0, mu, tol);
  return numeric::adaptive_simpson(integrand, 0.0, e, tol) +
         numeric::adaptive_simpson(integrand, e, mu, tol);
}

double limit_gap(const RaceParams& params) {
  return averaged_late_limit(params) - early_donation_enmity_limit(params);
}

LimitCurvePoint limit_curve_point(const RaceParams& params, double parameter) {
  LimitCurvePoint point;
  point.parameter = parameter;
  point.early_limit = early_donation_enmity_limit(params);
  point.late_limit_avg = averaged_late_limit(params);
  point.gap = point.late_limit_avg - point.early_limit;
  return point;
}

std::vector<RaceParams> standard_lattice() {
  std::vector<RaceParams> lattice;
  for (int n : kLatticeN) {
    for (double mu : kLatticeMu) {
      for (double e : kLatticeE) lattice.push_back({n, mu, e});
    }
  }
  return lattice;
}

std::vector<RaceParams> verification_lattice() {
  constexpr std::size_t kMuCount = std::size(kLatticeMu);
  std::vector<RaceParams> lattice;
  for (std::size_t i = 0; i < std::size(kLatticeN); ++i) {
    for (std::size_t j = 0; j < std::size(kLatticeE); ++j) {
      lattice.push_back({kLatticeN[i], kLatticeMu[(i + j) % kMuCount], kLatticeE[j]});
    }
  }
  return lattice;
}

}  // namespace wfc
