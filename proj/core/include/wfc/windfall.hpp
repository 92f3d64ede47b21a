#pragma once

// Windfall Clause: every firm pledges share tau of windfall profits to
// causes it regards with donation enmity e_wc. Winner and loser payoffs
// share the factor lambda_pi, and the effective enmity shrinks to
// lambda_e * e, so the race under a clause is the baseline race with
// rescaled enmity.

#include "wfc/race_core.hpp"

namespace wfc {

struct WindfallClause {
  double tau = 0.0;   // pledged windfall share
  double e_wc = 0.0;  // donation enmity
};

struct ClauseFactors {
  double lambda_pi = 1.0;  // value of retained profits, 1 - tau * e_wc
  double lambda_e = 1.0;   // enmity shrink, (1 - tau) / (1 - tau * e_wc)
};

// Throws std::invalid_argument for out-of-range fields and std::domain_error
// for the degenerate clause tau * e_wc = 1.
void validate(const WindfallClause& clause);

ClauseFactors clause_factors(const WindfallClause& clause);

// Pledge that yields a given lambda_e at donation enmity e_wc.
double tau_for_lambda_e(double lambda_e, double e_wc);

// min(delta / (lambda_e * e), 1); lambda_e = 0 always gives full safety.
double wc_winner_safety(double delta, double e, const WindfallClause& clause);

// Raw clause payoffs, before factoring out lambda_pi.
double wc_winner_coefficient(const WindfallClause& clause);
double wc_loser_coefficient(const WindfallClause& clause, double e);

RaceOutcome wc_equilibrium_profile(const CapabilityProfile& profile,
                                   const RaceParams& params,
                                   const WindfallClause& clause);

// lambda_pi * expected_payoff at enmity lambda_e * e.
double wc_expected_payoff(const RaceParams& params, const WindfallClause& clause);

}  // namespace wfc
