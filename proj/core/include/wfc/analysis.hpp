#pragma once

// Which Windfall Clauses are rational to join.
//
// Early clauses are agreed before capabilities are known, so firms compare
// expected payoffs with and without the clause. Late clauses are agreed once
// the leader and its baseline safety s_top are common knowledge; the leader
// is the binding party because losers gain whenever the leader does.

#include <optional>
#include <vector>

#include "wfc/race_core.hpp"
#include "wfc/windfall.hpp"

namespace wfc {

// Slack used when comparing expected payoffs so that exact indifference
// (e.g. tau = 0, or e_wc at the donation enmity limit) counts as rational.
inline constexpr double kRationalityTolerance = 1e-12;

struct RationalInterval {
  // When empty, lower and upper hold the crossed (clamped) bounds.
  double lower = 0.0;
  double upper = 1.0;
  bool empty = false;

  bool contains(double tau) const { return !empty && tau >= lower && tau <= upper; }
};

struct LimitCurvePoint {
  double parameter = 0.0;
  double early_limit = 0.0;
  double late_limit_avg = 0.0;
  double gap = 0.0;
};

// lambda_pi * EPi(lambda_e * e) - EPi(e); non-negative means rational.
double early_residual(const RaceParams& params, const WindfallClause& clause);
bool early_is_rational(const RaceParams& params, const WindfallClause& clause);

// Largest tau > 0 at which joining is exactly as good as no clause (the
// trivial root tau = 0 is ignored). Returns 0 when every positive pledge is
// irrational and empty when every pledge is strictly rational. Where small
// pledges lose but large ones win, this is the crossing back to rational.
std::optional<double> early_indifference_tau(const RaceParams& params, double e_wc);

// Largest e_wc at which the full-safety clause tau = 1 is still rational.
double early_donation_enmity_limit(const RaceParams& params);

RationalInterval late_rational_bounds(double s_top, double e_wc);

// Leader's payoff from a late clause given its no-clause safety s_top.
double late_winner_utility(double s_top, const WindfallClause& clause);

// Smallest pledge that guarantees full safety, which is also the leader's
// preferred clause whenever any rational clause exists.
std::optional<double> late_optimal_tau(double s_top, double e_wc);

double late_limit(double s_top);

// Late limit averaged over the capability gap distribution.
double averaged_late_limit(const RaceParams& params);

double limit_gap(const RaceParams& params);

LimitCurvePoint limit_curve_point(const RaceParams& params, double parameter);

// Property-suite lattice: n x mu x e (180 points).
inline constexpr int kLatticeN[] = {2, 3, 4, 6, 8, 10};
inline constexpr double kLatticeMu[] = {0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
inline constexpr double kLatticeE[] = {0.1, 0.3, 0.5, 0.7, 0.9};

std::vector<RaceParams> standard_lattice();

// 30-point verification lattice: every (n, e) pair, with mu rotated so each
// mu value appears five times and both disaster-risk branches are covered.
std::vector<RaceParams> verification_lattice();

}  // namespace wfc
