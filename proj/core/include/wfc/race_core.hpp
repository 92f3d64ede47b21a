#pragma once

// Baseline full-information race: firms draw capabilities uniformly on
// [0, mu], trade score for safety one-for-one, and the highest score wins.
// A winner with safety s avoids disaster with probability s; losers value
// the winner's success at (1 - e) of their own.

#include <cstddef>
#include <span>
#include <vector>

namespace wfc {

struct RaceParams {
  int n = 2;        // number of competitors
  double mu = 2.0;  // maximum capability
  double e = 0.5;   // enmity between firms
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const RaceParams& params);

struct CapabilityProfile {
  std::vector<double> capabilities;
};

void validate(const CapabilityProfile& profile, const RaceParams& params);

// Leader is the highest capability (lowest index on ties); runner_up is the
// best of the rest. gap is the capability difference between them.
struct Ranking {
  std::size_t leader = 0;
  std::size_t runner_up = 1;
  double gap = 0.0;
};

Ranking rank(std::span<const double> capabilities);

struct RaceOutcome {
  std::size_t winner = 0;
  double s_top = 0.0;
  std::vector<double> safeties;
  std::vector<double> scores;
  // Expected over the disaster lottery.
  std::vector<double> utilities;
};

// Index of the highest score. Scores within kScoreTieTolerance of the best
// are treated as tied; ties go to the higher capability, then the lower index.
inline constexpr double kScoreTieTolerance = 1e-12;
std::size_t resolve_winner(std::span<const double> capabilities,
                           std::span<const double> safeties);

// min(delta / e, 1). Rejects e = 0 with std::domain_error.
double winner_safety(double delta, double e);

// Strategy profile supporting a leader safety of s_top: the runner-up plays
// the score-matching threat max(0, s_top - gap), everyone else plays 1.
std::vector<double> equilibrium_safeties(std::span<const double> capabilities,
                                         double s_top);

RaceOutcome equilibrium_profile(const CapabilityProfile& profile,
                                const RaceParams& params);

// Average disaster probability over the capability distribution.
// e = 0 is the no-enmity limit and returns 0.
double disaster_risk(const RaceParams& params);
double expected_safety(const RaceParams& params);
double expected_payoff(const RaceParams& params);

// P(gap > x) for the top-two capability gap, x in [0, mu].
double gap_survival(double x, const RaceParams& params);
// Density of the gap, (n / mu) (1 - x / mu)^(n - 1).
double gap_density(double x, const RaceParams& params);

}  // namespace wfc
