#include "wfc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wfc {

void validate(const SimConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (config.safety_grid_points < 2) {
    throw std::invalid_argument("safety_grid_points must be at least 2");
  }
  if (!(config.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
}

double McEstimate::z_score(double reference) const {
  const double diff = mean - reference;
  if (std_error == 0.0) return diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
  return diff / std_error;
}

bool McEstimate::brackets(double reference, double k) const {
  return std::abs(mean - reference) <= k * std_error;
}

void MeanAccumulator::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void MeanAccumulator::merge(const MeanAccumulator& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / n;
  m2 += other.m2 + delta * delta * na * nb / n;
  count += other.count;
}

McEstimate MeanAccumulator::estimate() const {
  McEstimate est;
  est.mean = mean;
  est.trials = count;
  if (count > 1) {
    const double variance = m2 / static_cast<double>(count - 1);
    est.std_error = std::sqrt(std::max(0.0, variance) / static_cast<double>(count));
  }
  return est;
}

ProfileSampler::ProfileSampler(const RaceParams& params, std::uint64_t seed,
                               std::uint64_t trials)
    : params_(params), seed_(seed), trials_(trials) {
  validate(params_);
}

CapabilityProfile ProfileSampler::operator[](std::uint64_t trial) const {
  StreamRng rng(seed_, trial);
  CapabilityProfile profile;
  profile.capabilities.resize(static_cast<std::size_t>(params_.n));
  for (double& c : profile.capabilities) c = params_.mu * rng.uniform();
  return profile;
}

double ProfileSampler::gap(std::uint64_t trial, double* extra) const {
  StreamRng rng(seed_, trial);
  double top = -1.0;
  double second = -1.0;
  for (int i = 0; i < params_.n; ++i) {
    const double c = params_.mu * rng.uniform();
    if (c > top) {
      second = top;
      top = c;
    } else if (c > second) {
      second = c;
    }
  }
  if (extra != nullptr) *extra = rng.uniform();
  return top - second;
}

std::vector<CapabilityProfile> sample_profiles(const RaceParams& params,
                                               const SimConfig& config) {
  validate(config);
  const ProfileSampler sampler(params, config.seed, config.trials);
  std::vector<CapabilityProfile> profiles(config.trials);
  parallel_for(config.trials, resolve_thread_count(config.threads),
               [&](std::size_t i) { profiles[i] = sampler[i]; });
  return profiles;
}

namespace {

void require_positive_enmity(const RaceParams& params, const char* who) {
  if (!(params.e > 0.0)) {
    throw std::domain_error(std::string(who) + ": enmity must be positive");
  }
}

}  // namespace

McEstimate mc_expected_safety(const RaceParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  require_positive_enmity(params, "mc_expected_safety");
  const ProfileSampler sampler(params, config.seed, config.trials);
  return estimate_mean(config.trials, config.threads, [&](std::uint64_t i) {
    return winner_safety(sampler.gap(i), params.e);
  });
}

McEstimate mc_expected_payoff(const RaceParams& params,
                              const std::optional<WindfallClause>& clause,
                              const SimConfig& config, DisasterMode mode) {
  validate(params);
  validate(config);
  require_positive_enmity(params, "mc_expected_payoff");

  double winner_coef = 1.0;
  double loser_coef = 1.0 - params.e;
  if (clause) {
    validate(*clause);
    winner_coef = wc_winner_coefficient(*clause);
    loser_coef = wc_loser_coefficient(*clause, params.e);
  }
  const double n = params.n;
  const double firm_average = (winner_coef + (n - 1.0) * loser_coef) / n;

  const ProfileSampler sampler(params, config.seed, config.trials);
  return estimate_mean(config.trials, config.threads, [&](std::uint64_t i) {
    double disaster_draw = 0.0;
    const double gap = sampler.gap(i, &disaster_draw);
    const double s_top =
        clause ? wc_winner_safety(gap, params.e, *clause) : winner_safety(gap, params.e);
    if (mode == DisasterMode::kLottery) return firm_average * s_top;
    return disaster_draw < s_top ? firm_average : 0.0;
  });
}

McEstimate mc_gap_exceeds(double x, const RaceParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  const ProfileSampler sampler(params, config.seed, config.trials);
  return estimate_mean(config.trials, config.threads,
                       [&](std::uint64_t i) { return sampler.gap(i) > x ? 1.0 : 0.0; });
}

McEstimate mc_averaged_late_limit(const RaceParams& params, const SimConfig& config) {
  validate(params);
  validate(config);
  require_positive_enmity(params, "mc_averaged_late_limit");
  const ProfileSampler sampler(params, config.seed, config.trials);
  return estimate_mean(config.trials, config.threads, [&](std::uint64_t i) {
    return 1.0 / (1.0 + std::min(1.0, sampler.gap(i) / params.e));
  });
}

namespace {

struct PayoffRule {
  double winner_coef;
  double loser_coef;

  double utility(std::size_t firm, std::size_t winner, std::span<const double> safeties) const {
    return firm == winner ? winner_coef * safeties[firm] : loser_coef * safeties[winner];
  }
};

}  // namespace

BestResponseReport best_response_check(const CapabilityProfile& profile,
                                       const RaceParams& params,
                                       const std::optional<WindfallClause>& clause,
                                       const SimConfig& config,
                                       std::span<const double> safeties) {
  validate(profile, params);
  validate(config);
  const auto& c = profile.capabilities;
  const std::size_t n = c.size();
  if (safeties.size() != n) throw std::invalid_argument("one safety per firm is required");

  PayoffRule rule{1.0, 1.0 - params.e};
  if (clause) {
    validate(*clause);
    rule = {wc_winner_coefficient(*clause), wc_loser_coefficient(*clause, params.e)};
  }

  BestResponseReport report;
  report.equilibrium_utility.resize(n);
  report.max_gain.assign(n, -std::numeric_limits<double>::infinity());
  report.best_safety.assign(n, 0.0);
  const std::size_t grid = config.safety_grid_points;
  report.allowance = config.epsilon + rule.winner_coef / static_cast<double>(grid - 1);

  std::vector<double> trial(safeties.begin(), safeties.end());
  const std::size_t eq_winner = resolve_winner(c, trial);
  for (std::size_t i = 0; i < n; ++i) {
    report.equilibrium_utility[i] = rule.utility(i, eq_winner, trial);
  }

  for (std::size_t i = 0; i < n; ++i) {
    // Winner among the other firms when firm i is clearly out of contention.
    trial[i] = std::numeric_limits<double>::infinity();
    const std::size_t others_winner = resolve_winner(c, trial);
    double others_best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others_best = std::max(others_best, c[j] - safeties[j]);
    }

    for (std::size_t k = 0; k < grid; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(grid - 1);
      const double own = c[i] - s;
      const double margin =
          4.0 * kScoreTieTolerance * std::max({1.0, std::abs(own), std::abs(others_best)});
      std::size_t winner;
      if (own < others_best - margin) {
        winner = others_winner;
      } else if (own > others_best + margin) {
        winner = i;
      } else {
        trial[i] = s;
        winner = resolve_winner(c, trial);
      }
      trial[i] = s;
      const double gain = rule.utility(i, winner, trial) - report.equilibrium_utility[i];
      if (gain > report.max_gain[i]) {
        report.max_gain[i] = gain;
        report.best_safety[i] = s;
      }
    }
    trial[i] = safeties[i];
  }

  report.worst_gain = *std::max_element(report.max_gain.begin(), report.max_gain.end());
  report.pass = report.worst_gain <= report.allowance;
  return report;
}

BestResponseReport best_response_check(const CapabilityProfile& profile,
                                       const RaceParams& params,
                                       const std::optional<WindfallClause>& clause,
                                       const SimConfig& config) {
  const RaceOutcome eq = clause ? wc_equilibrium_profile(profile, params, *clause)
                                : equilibrium_profile(profile, params);
  return best_response_check(profile, params, clause, config, eq.safeties);
}

}  // namespace wfc
