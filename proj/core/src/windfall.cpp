#include "wfc/windfall.hpp"

#include <stdexcept>

namespace wfc {

void validate(const WindfallClause& clause) {
  if (!(clause.tau >= 0.0 && clause.tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0,1]");
  }
  if (!(clause.e_wc >= 0.0 && clause.e_wc <= 1.0)) {
    throw std::invalid_argument("e_wc must lie in [0,1]");
  }
  if (clause.tau * clause.e_wc >= 1.0) {
    throw std::domain_error("degenerate clause: tau * e_wc = 1 leaves no prize value");
  }
}

ClauseFactors clause_factors(const WindfallClause& clause) {
  validate(clause);
  const double retained = 1.0 - clause.tau * clause.e_wc;
  return {retained, (1.0 - clause.tau) / retained};
}

double tau_for_lambda_e(double lambda_e, double e_wc) {
  if (!(lambda_e >= 0.0 && lambda_e <= 1.0)) {
    throw std::invalid_argument("lambda_e must lie in [0,1]");
  }
  if (!(e_wc >= 0.0 && e_wc <= 1.0)) {
    throw std::invalid_argument("e_wc must lie in [0,1]");
  }
  if (lambda_e == 1.0) return 0.0;
  if (e_wc == 1.0) {
    throw std::domain_error("e_wc = 1 admits only lambda_e = 1");
  }
  return (1.0 - lambda_e) / (1.0 - lambda_e * e_wc);
}

double wc_winner_safety(double delta, double e, const WindfallClause& clause) {
  const ClauseFactors f = clause_factors(clause);
  if (f.lambda_e == 0.0) return 1.0;
  if (!(e > 0.0)) {
    throw std::domain_error("wc_winner_safety: enmity must be positive");
  }
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("wc_winner_safety: capability gap must be non-negative");
  }
  const double effective = f.lambda_e * e;
  return delta < effective ? delta / effective : 1.0;
}

double wc_winner_coefficient(const WindfallClause& clause) {
  return (1.0 - clause.tau) + clause.tau * (1.0 - clause.e_wc);
}

double wc_loser_coefficient(const WindfallClause& clause, double e) {
  return (1.0 - clause.tau) * (1.0 - e) + clause.tau * (1.0 - clause.e_wc);
}

RaceOutcome wc_equilibrium_profile(const CapabilityProfile& profile,
                                   const RaceParams& params,
                                   const WindfallClause& clause) {
  validate(profile, params);
  const ClauseFactors f = clause_factors(clause);
  const auto& c = profile.capabilities;
  const Ranking r = rank(c);

  RaceOutcome out;
  out.s_top = params.e == 0.0 ? 1.0 : wc_winner_safety(r.gap, params.e, clause);
  out.safeties = equilibrium_safeties(c, out.s_top);
  out.winner = resolve_winner(c, out.safeties);
  out.scores.resize(c.size());
  out.utilities.resize(c.size());
  const double loser_share = f.lambda_pi * (1.0 - f.lambda_e * params.e);
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.scores[i] = c[i] - out.safeties[i];
    out.utilities[i] = i == out.winner ? f.lambda_pi * out.s_top : loser_share * out.s_top;
  }
  return out;
}

double wc_expected_payoff(const RaceParams& params, const WindfallClause& clause) {
  validate(params);
  const ClauseFactors f = clause_factors(clause);
  return f.lambda_pi * expected_payoff({params.n, params.mu, f.lambda_e * params.e});
}

}  // namespace wfc
