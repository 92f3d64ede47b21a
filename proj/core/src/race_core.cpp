#include "wfc/race_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wfc {

void validate(const RaceParams& params) {
  if (params.n < 2) {
    throw std::invalid_argument("n must be at least 2, got " + std::to_string(params.n));
  }
  if (!(params.mu > 0.0) || !std::isfinite(params.mu)) {
    throw std::invalid_argument("mu must be a positive finite number");
  }
  if (!(params.e >= 0.0 && params.e <= 1.0)) {
    throw std::invalid_argument("e must lie in [0,1]");
  }
}

void validate(const CapabilityProfile& profile, const RaceParams& params) {
  validate(params);
  if (profile.capabilities.size() != static_cast<std::size_t>(params.n)) {
    throw std::invalid_argument("capability profile length must equal n");
  }
  for (double c : profile.capabilities) {
    if (!(c >= 0.0 && c <= params.mu)) {
      throw std::invalid_argument("capabilities must lie in [0, mu]");
    }
  }
}

Ranking rank(std::span<const double> capabilities) {
  if (capabilities.size() < 2) {
    throw std::invalid_argument("ranking needs at least two firms");
  }
  Ranking r;
  r.leader = 0;
  for (std::size_t i = 1; i < capabilities.size(); ++i) {
    if (capabilities[i] > capabilities[r.leader]) r.leader = i;
  }
  r.runner_up = r.leader == 0 ? 1 : 0;
  for (std::size_t i = 0; i < capabilities.size(); ++i) {
    if (i == r.leader) continue;
    if (capabilities[i] > capabilities[r.runner_up]) r.runner_up = i;
  }
  r.gap = capabilities[r.leader] - capabilities[r.runner_up];
  return r;
}

std::size_t resolve_winner(std::span<const double> capabilities,
                           std::span<const double> safeties) {
  const std::size_t n = capabilities.size();
  double best_score = capabilities[0] - safeties[0];
  for (std::size_t i = 1; i < n; ++i) {
    best_score = std::max(best_score, capabilities[i] - safeties[i]);
  }
  const double tol = kScoreTieTolerance * std::max(1.0, std::abs(best_score));
  std::size_t winner = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (capabilities[i] - safeties[i] < best_score - tol) continue;
    if (winner == n || capabilities[i] > capabilities[winner]) winner = i;
  }
  return winner;
}

double winner_safety(double delta, double e) {
  if (!(e > 0.0)) {
    throw std::domain_error("winner_safety: enmity must be positive (delta / e is undefined at e = 0)");
  }
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("winner_safety: capability gap must be non-negative");
  }
  return delta < e ? delta / e : 1.0;
}

std::vector<double> equilibrium_safeties(std::span<const double> capabilities,
                                         double s_top) {
  const Ranking r = rank(capabilities);
  std::vector<double> safeties(capabilities.size(), 1.0);
  safeties[r.leader] = s_top;
  safeties[r.runner_up] = std::max(0.0, s_top - r.gap);
  return safeties;
}

RaceOutcome equilibrium_profile(const CapabilityProfile& profile,
                                const RaceParams& params) {
  validate(profile, params);
  const auto& c = profile.capabilities;
  const Ranking r = rank(c);

  RaceOutcome out;
  out.s_top = params.e == 0.0 ? 1.0 : winner_safety(r.gap, params.e);
  out.safeties = equilibrium_safeties(c, out.s_top);
  out.winner = resolve_winner(c, out.safeties);
  out.scores.resize(c.size());
  out.utilities.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.scores[i] = c[i] - out.safeties[i];
    out.utilities[i] = i == out.winner ? out.s_top : (1.0 - params.e) * out.s_top;
  }
  return out;
}

double disaster_risk(const RaceParams& params) {
  validate(params);
  const double n = params.n;
  const double mu = params.mu;
  const double e = params.e;
  if (e == 0.0) return 0.0;

  double risk = 1.0 - mu / (e * (n + 1.0));
  if (mu >= e) {
    risk += std::pow(mu - e, n + 1.0) / (e * (n + 1.0) * std::pow(mu, n));
  }
  return std::clamp(risk, 0.0, 1.0);
}

double expected_safety(const RaceParams& params) {
  return 1.0 - disaster_risk(params);
}

double expected_payoff(const RaceParams& params) {
  const double safety = expected_safety(params);
  const double n = params.n;
  return safety / n + (n - 1.0) / n * (1.0 - params.e) * safety;
}

double gap_survival(double x, const RaceParams& params) {
  validate(params);
  if (!(x >= 0.0 && x <= params.mu)) {
    throw std::domain_error("gap_survival: x must lie in [0, mu]");
  }
  return std::pow(1.0 - x / params.mu, params.n);
}

double gap_density(double x, const RaceParams& params) {
  validate(params);
  if (!(x >= 0.0 && x <= params.mu)) {
    throw std::domain_error("gap_density: x must lie in [0, mu]");
  }
  return params.n / params.mu * std::pow(1.0 - x / params.mu, params.n - 1);
}

}  // namespace wfc
