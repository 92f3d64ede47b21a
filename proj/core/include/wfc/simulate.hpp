#pragma once

// Independent oracles for the closed forms: plain Monte Carlo over sampled
// capability profiles, and brute-force unilateral-deviation checks of the
// equilibrium strategies.
//
// Every estimate is a pure function of (inputs, seed). Trials are grouped in
// fixed-size blocks that are reduced in block order, so the thread count
// never changes a result.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wfc/parallel.hpp"
#include "wfc/race_core.hpp"
#include "wfc/rng.hpp"
#include "wfc/windfall.hpp"

namespace wfc {

struct SimConfig {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 20230117;
  std::size_t safety_grid_points = 2001;
  double epsilon = 1e-9;
  unsigned threads = 0;  // 0: WFC_THREADS or hardware concurrency
};

void validate(const SimConfig& config);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample stdev / sqrt(trials)
  std::uint64_t trials = 0;

  double z_score(double reference) const;
  bool brackets(double reference, double k = 3.0) const;
};

// Running (count, mean, M2) accumulator; merge() is Chan's pairwise update.
struct MeanAccumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const MeanAccumulator& other);
  McEstimate estimate() const;
};

inline constexpr std::uint64_t kTrialsPerBlock = 1u << 14;

// Mean of per_trial(i) over i in [0, trials) with a deterministic reduction.
template <class PerTrial>
McEstimate estimate_mean(std::uint64_t trials, unsigned threads, PerTrial&& per_trial) {
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<MeanAccumulator> partial(blocks);
  parallel_for(blocks, resolve_thread_count(threads), [&](std::size_t b) {
    MeanAccumulator acc;
    const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kTrialsPerBlock);
    for (std::uint64_t i = b * kTrialsPerBlock; i < end; ++i) acc.add(per_trial(i));
    partial[b] = acc;
  });
  MeanAccumulator total;
  for (const auto& acc : partial) total.merge(acc);
  return total.estimate();
}

// Trial i's profile: n i.i.d. uniforms on [0, mu] from stream (seed, i).
class ProfileSampler {
 public:
  ProfileSampler(const RaceParams& params, std::uint64_t seed, std::uint64_t trials);

  std::uint64_t size() const { return trials_; }
  CapabilityProfile operator[](std::uint64_t trial) const;

  // Top-two gap of trial i without materializing the profile. When
  // `extra` is non-null it receives the next uniform of the same stream.
  double gap(std::uint64_t trial, double* extra = nullptr) const;

 private:
  RaceParams params_;
  std::uint64_t seed_;
  std::uint64_t trials_;
};

std::vector<CapabilityProfile> sample_profiles(const RaceParams& params,
                                               const SimConfig& config);

enum class DisasterMode {
  kLottery,   // pay the disaster-lottery expectation s_top * prize
  kRealized,  // draw the disaster; everyone gets 0 when it happens
};

McEstimate mc_expected_safety(const RaceParams& params, const SimConfig& config);

// Firm-averaged payoff. Utilities use the raw clause payoffs, not the
// lambda factorization.
McEstimate mc_expected_payoff(const RaceParams& params,
                              const std::optional<WindfallClause>& clause,
                              const SimConfig& config,
                              DisasterMode mode = DisasterMode::kLottery);

// Fraction of profiles whose top-two gap exceeds x.
McEstimate mc_gap_exceeds(double x, const RaceParams& params, const SimConfig& config);

// Sample mean of 1 / (1 + min(1, gap / e)).
McEstimate mc_averaged_late_limit(const RaceParams& params, const SimConfig& config);

struct BestResponseReport {
  std::vector<double> equilibrium_utility;
  std::vector<double> max_gain;     // per firm, over the deviation grid
  std::vector<double> best_safety;  // deviation achieving max_gain
  double allowance = 0.0;           // epsilon + grid-resolution slack
  double worst_gain = 0.0;
  bool pass = false;
};

// Holds the other firms at the supplied strategies and tries every safety
// on a uniform grid in [0, 1] for each firm in turn.
BestResponseReport best_response_check(const CapabilityProfile& profile,
                                       const RaceParams& params,
                                       const std::optional<WindfallClause>& clause,
                                       const SimConfig& config,
                                       std::span<const double> safeties);

// Same, at the module's equilibrium strategies.
BestResponseReport best_response_check(const CapabilityProfile& profile,
                                       const RaceParams& params,
                                       const std::optional<WindfallClause>& clause,
                                       const SimConfig& config);

}  // namespace wfc
