#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wfc/analysis.hpp"
#include "wfc/race_core.hpp"
#include "wfc/simulate.hpp"

namespace wfc {
namespace {

TEST(WinnerSafety, Cases) {
  EXPECT_EQ(winner_safety(0.0, 0.5), 0.0);
  EXPECT_EQ(winner_safety(0.7, 0.5), 1.0);
  EXPECT_EQ(winner_safety(0.25, 0.5), 0.5);
  EXPECT_EQ(winner_safety(0.5, 0.5), 1.0);
}

TEST(WinnerSafety, RejectsZeroEnmity) {
  EXPECT_THROW(winner_safety(0.1, 0.0), std::domain_error);
  EXPECT_THROW(winner_safety(-0.1, 0.5), std::invalid_argument);
}

TEST(WinnerSafety, MonotoneAndClamped) {
  for (double e = 0.05; e <= 1.0; e += 0.05) {
    double prev = -1.0;
    for (double d = 0.0; d <= 2.0; d += 0.01) {
      const double s = winner_safety(d, e);
      EXPECT_GE(s, prev);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
      EXPECT_LE(winner_safety(d, e + 0.05), s + 1e-15);
      prev = s;
    }
  }
}

TEST(Validate, RejectsOutOfDomainParams) {
  EXPECT_THROW(validate(RaceParams{1, 2.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(validate(RaceParams{2, 0.0, 0.5}), std::invalid_argument);
  EXPECT_THROW(validate(RaceParams{2, 2.0, 1.5}), std::invalid_argument);
  EXPECT_THROW(validate(RaceParams{2, 2.0, -0.1}), std::invalid_argument);
  EXPECT_NO_THROW(validate(RaceParams{2, 2.0, 0.0}));
  try {
    validate(RaceParams{2, 2.0, 1.5});
  } catch (const std::invalid_argument& ex) {
    EXPECT_STREQ(ex.what(), "e must lie in [0,1]");
  }
}

TEST(Validate, RejectsBadProfiles) {
  const RaceParams p{2, 2.0, 0.5};
  EXPECT_THROW(validate(CapabilityProfile{{1.0}}, p), std::invalid_argument);
  EXPECT_THROW(validate(CapabilityProfile{{1.0, 2.5}}, p), std::invalid_argument);
  EXPECT_THROW(validate(CapabilityProfile{{-0.1, 1.0}}, p), std::invalid_argument);
}

TEST(Rank, LowestIndexWinsCapabilityTies) {
  const double c[] = {1.0, 1.5, 1.5, 0.3};
  const Ranking r = rank(c);
  EXPECT_EQ(r.leader, 1u);
  EXPECT_EQ(r.runner_up, 2u);
  EXPECT_EQ(r.gap, 0.0);
}

TEST(EquilibriumProfile, LeaderFullySafeWhenGapExceedsEnmity) {
  const auto out = equilibrium_profile({{2.0, 1.5}}, {2, 2.0, 0.5});
  EXPECT_EQ(out.winner, 0u);
  EXPECT_EQ(out.s_top, 1.0);
  EXPECT_EQ(out.utilities[0], 1.0);
  EXPECT_EQ(out.utilities[1], 0.5);
}

TEST(EquilibriumProfile, TiedCapabilitiesForceZeroSafety) {
  const auto out = equilibrium_profile({{1.0, 1.0}}, {2, 2.0, 0.5});
  EXPECT_EQ(out.s_top, 0.0);
  EXPECT_EQ(out.winner, 0u);
}

TEST(EquilibriumProfile, ThreeFirms) {
  const auto out = equilibrium_profile({{1.8, 1.6, 0.2}}, {3, 2.0, 0.5});
  EXPECT_EQ(out.winner, 0u);
  EXPECT_NEAR(out.s_top, 0.4, 1e-12);
  EXPECT_NEAR(out.utilities[0], 0.4, 1e-12);
  EXPECT_NEAR(out.utilities[1], 0.2, 1e-12);
  EXPECT_NEAR(out.utilities[2], 0.2, 1e-12);
  // Winner's score is maximal; the runner-up matches it.
  EXPECT_NEAR(out.scores[0], out.scores[1], 1e-12);
  EXPECT_GT(out.scores[0], out.scores[2]);
}

TEST(EquilibriumProfile, ZeroEnmityIsFullSafetyLimit) {
  const auto out = equilibrium_profile({{1.0, 0.9}}, {2, 2.0, 0.0});
  EXPECT_EQ(out.s_top, 1.0);
  EXPECT_EQ(out.utilities[1], 1.0);
}

TEST(EquilibriumProfile, ExamplesAreNashEquilibria) {
  SimConfig config;
  const RaceParams two{2, 2.0, 0.5};
  const RaceParams three{3, 2.0, 0.5};
  EXPECT_TRUE(best_response_check({{2.0, 1.5}}, two, std::nullopt, config).pass);
  EXPECT_TRUE(best_response_check({{1.0, 1.0}}, two, std::nullopt, config).pass);
  EXPECT_TRUE(best_response_check({{1.8, 1.6, 0.2}}, three, std::nullopt, config).pass);
}

TEST(DisasterRisk, SpotValues) {
  EXPECT_NEAR(disaster_risk({2, 2.0, 0.5}), 0.229166666666666667, 1e-12);
  EXPECT_NEAR(disaster_risk({2, 0.3, 0.5}), 0.8, 1e-12);
  EXPECT_EQ(disaster_risk({2, 2.0, 0.0}), 0.0);
}

TEST(DisasterRisk, ContinuousAcrossBranchBoundary) {
  for (int n : kLatticeN) {
    for (double e : kLatticeE) {
      const double below = disaster_risk({n, std::nextafter(e, 0.0), e});
      const double at = disaster_risk({n, e, e});
      EXPECT_NEAR(below, at, 1e-12);
      EXPECT_NEAR(at, 1.0 - 1.0 / (n + 1.0), 1e-12);
    }
  }
}

TEST(DisasterRisk, BoundedAndMonotoneOnLattice) {
  for (const auto& p : standard_lattice()) {
    const double r = disaster_risk(p);
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
  for (double mu : kLatticeMu) {
    for (double e : kLatticeE) {
      for (std::size_t i = 1; i < std::size(kLatticeN); ++i) {
        EXPECT_GE(disaster_risk({kLatticeN[i], mu, e}), disaster_risk({kLatticeN[i - 1], mu, e}));
      }
    }
  }
  for (int n : kLatticeN) {
    for (double e : kLatticeE) {
      for (std::size_t i = 1; i < std::size(kLatticeMu); ++i) {
        EXPECT_LE(disaster_risk({n, kLatticeMu[i], e}), disaster_risk({n, kLatticeMu[i - 1], e}));
      }
    }
    for (double mu : kLatticeMu) {
      for (std::size_t i = 1; i < std::size(kLatticeE); ++i) {
        EXPECT_GE(disaster_risk({n, mu, kLatticeE[i]}), disaster_risk({n, mu, kLatticeE[i - 1]}));
      }
    }
  }
}

TEST(ExpectedSafety, SpotValues) {
  EXPECT_NEAR(expected_safety({2, 2.0, 0.5}), 0.770833333333333333, 1e-12);
  EXPECT_GT(expected_safety({2, 10.0, 0.5}), 0.95);
  EXPECT_LT(expected_safety({2, 1e-6, 0.5}), 1e-6);
}

TEST(ExpectedSafety, MatchesIntegratedGapSurvival) {
  for (const auto& p : standard_lattice()) {
    const double upper = std::min(p.e, p.mu);
    const double integral = testing::composite_simpson(
        [&](double x) { return gap_survival(x, p); }, 0.0, upper);
    EXPECT_NEAR(integral / p.e, expected_safety(p), 1e-9)
        << "n=" << p.n << " mu=" << p.mu << " e=" << p.e;
  }
}

TEST(ExpectedPayoff, SpotValues) {
  EXPECT_NEAR(expected_payoff({2, 2.0, 0.5}), 0.578125, 1e-12);
  EXPECT_NEAR(expected_payoff({3, 2.0, 0.5}), 0.455729166666666667, 1e-12);
  EXPECT_EQ(expected_payoff({4, 3.0, 0.0}), expected_safety({4, 3.0, 0.0}));
  EXPECT_EQ(expected_payoff({4, 3.0, 0.0}), 1.0);
}

TEST(GapSurvival, EndpointsAndDomain) {
  const RaceParams p{2, 2.0, 0.5};
  EXPECT_EQ(gap_survival(0.0, p), 1.0);
  EXPECT_EQ(gap_survival(2.0, p), 0.0);
  EXPECT_EQ(gap_survival(1.0, p), 0.25);
  EXPECT_THROW(gap_survival(-0.01, p), std::domain_error);
  EXPECT_THROW(gap_survival(2.01, p), std::domain_error);
}

TEST(GapSurvival, MatchesEmpiricalDistribution) {
  std::mt19937_64 engine(7);
  for (int n : {2, 3, 6}) {
    const RaceParams p{n, 2.0, 0.5};
    for (double x : {0.1, 0.5, 1.0}) {
      const auto m = testing::sample_mean(200000, [&] {
        return testing::sample_gap(engine, n, p.mu) > x ? 1.0 : 0.0;
      });
      EXPECT_NEAR(m.mean, gap_survival(x, p), 4.0 * m.std_error) << "n=" << n << " x=" << x;
    }
  }
}

TEST(GapDensity, IntegratesToOneAndDifferentiatesSurvival) {
  for (int n : {2, 5, 10}) {
    const RaceParams p{n, 1.7, 0.5};
    EXPECT_NEAR(testing::composite_simpson([&](double x) { return gap_density(x, p); }, 0.0, p.mu),
                1.0, 1e-10);
    const double h = 1e-6;
    const double numeric = (gap_survival(0.6 - h, p) - gap_survival(0.6 + h, p)) / (2 * h);
    EXPECT_NEAR(numeric, gap_density(0.6, p), 1e-6);
  }
}

TEST(ExpectedSafety, MonteCarloWithIndependentSampler) {
  std::mt19937_64 engine(11);
  for (const RaceParams& p : {RaceParams{2, 2.0, 0.5}, RaceParams{2, 0.3, 0.5}, RaceParams{5, 1.0, 0.3}}) {
    const auto m = testing::sample_mean(400000, [&] {
      return std::min(1.0, testing::sample_gap(engine, p.n, p.mu) / p.e);
    });
    EXPECT_NEAR(m.mean, expected_safety(p), 4.0 * m.std_error);
  }
}

}  // namespace
}  // namespace wfc
