#include "wfc_cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wfc/analysis.hpp"
#include "wfc_cli/table.hpp"

namespace wfc::cli {

namespace {

constexpr double kZBand = 3.0;
constexpr std::size_t kOneSidedLimit = 5;
constexpr double kClauseDonationEnmity = 0.5;
constexpr double kClauseLambdaE[] = {0.0, 0.3, 0.625, 1.0};

std::string label(const char* what, const RaceParams& p) {
  std::ostringstream s;
  s << what << "/n=" << p.n << "/mu=" << format_number(p.mu) << "/e=" << format_number(p.e);
  return s.str();
}

// The mu < e branch applied everywhere.
double buggy_expected_safety(const RaceParams& p) {
  const double risk = 1.0 - p.mu / (p.e * (p.n + 1));
  return 1.0 - std::clamp(risk, 0.0, 1.0);
}

double buggy_expected_payoff(const RaceParams& p) {
  const double es = buggy_expected_safety(p);
  return es / p.n + (p.n - 1.0) / p.n * (1.0 - p.e) * es;
}

VerifyCheck mc_check(std::string name, double reference, const McEstimate& est) {
  VerifyCheck c{std::move(name), reference, est.mean, est.std_error, false};
  c.pass = std::abs(est.z_score(reference)) <= kZBand;
  return c;
}

// Fails when at least kOneSidedLimit points miss on the same side.
VerifyCheck one_sided_check(const char* name, const std::vector<VerifyCheck>& checks) {
  std::size_t high = 0;
  std::size_t low = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    (c.estimate > c.reference ? high : low)++;
  }
  const double worst = static_cast<double>(std::max(high, low));
  return {name, static_cast<double>(kOneSidedLimit), worst, std::nullopt,
          worst < static_cast<double>(kOneSidedLimit)};
}

}  // namespace

void validate(const VerifyOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (options.profiles < 1) throw std::invalid_argument("profiles must be at least 1");
  if (options.grid_points < 2) throw std::invalid_argument("grid points must be at least 2");
  if (!(options.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
}

VerifyResult run_verify(const VerifyOptions& options) {
  validate(options);
  const auto lattice = verification_lattice();
  VerifyResult result;

  if (options.monte_carlo) {
    SimConfig config;
    config.trials = options.trials;
    config.seed = options.seed;
    config.threads = options.threads;

    std::vector<VerifyCheck> safety;
    std::vector<VerifyCheck> payoff;
    for (const auto& p : lattice) {
      const double ref_s = options.inject_bug ? buggy_expected_safety(p) : expected_safety(p);
      const double ref_p = options.inject_bug ? buggy_expected_payoff(p) : expected_payoff(p);
      safety.push_back(mc_check(label("expected_safety", p), ref_s, mc_expected_safety(p, config)));
      payoff.push_back(mc_check(label("expected_payoff", p), ref_p,
                                mc_expected_payoff(p, std::nullopt, config)));
    }
    result.checks.insert(result.checks.end(), safety.begin(), safety.end());
    result.checks.insert(result.checks.end(), payoff.begin(), payoff.end());
    result.checks.push_back(one_sided_check("expected_safety/one_sided", safety));
    result.checks.push_back(one_sided_check("expected_payoff/one_sided", payoff));
  }

  if (options.best_response) {
    SimConfig config;
    config.trials = options.profiles;
    config.seed = options.seed;
    config.safety_grid_points = options.grid_points;
    config.epsilon = options.epsilon;

    std::vector<std::optional<WindfallClause>> clauses{std::nullopt};
    for (double lambda_e : kClauseLambdaE) {
      clauses.push_back(WindfallClause{tau_for_lambda_e(lambda_e, kClauseDonationEnmity),
                                       kClauseDonationEnmity});
    }
    const unsigned threads = resolve_thread_count(options.threads);

    for (const auto& p : lattice) {
      const ProfileSampler sampler(p, config.seed, config.trials);
      for (const auto& clause : clauses) {
        std::vector<unsigned char> ok(sampler.size());
        parallel_for(sampler.size(), threads, [&](std::size_t i) {
          ok[i] = best_response_check(sampler[i], p, clause, config).pass;
        });
        const auto passed = static_cast<double>(std::count(ok.begin(), ok.end(), 1));
        std::string name = label("best_response", p);
        if (clause) {
          name += "/lambda_e=" + format_number(clause_factors(*clause).lambda_e);
        } else {
          name += "/no_clause";
        }
        const double rate = passed / static_cast<double>(sampler.size());
        result.checks.push_back({std::move(name), 1.0, rate, std::nullopt, rate == 1.0});
      }
    }
  }

  result.failures = static_cast<std::size_t>(
      std::count_if(result.checks.begin(), result.checks.end(), [](const auto& c) { return !c.pass; }));
  return result;
}

void write_verify_csv(const VerifyResult& result, std::ostream& out) {
  out << "check,reference,estimate,std_error,verdict\n";
  for (const auto& c : result.checks) {
    out << c.name << ',' << format_number(c.reference) << ',' << format_number(c.estimate) << ','
        << (c.std_error ? format_number(*c.std_error) : std::string("NA")) << ','
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace wfc::cli
