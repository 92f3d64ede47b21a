#pragma once

// Oracle-agreement and best-response suites over the verification lattice.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wfc/simulate.hpp"

namespace wfc::cli {

struct VerifyOptions {
  std::uint64_t trials = 100'000;  // Monte Carlo trials per lattice point
  std::uint64_t seed = SimConfig{}.seed;
  std::uint64_t profiles = 1000;  // sampled profiles per lattice point
  std::size_t grid_points = 2001;
  double epsilon = 1e-9;
  unsigned threads = 0;
  bool monte_carlo = true;
  bool best_response = true;
  // Test-only: drops the mu >= e correction term from the disaster-risk
  // reference, so the Monte Carlo checks must fail.
  bool inject_bug = false;
};

void validate(const VerifyOptions& options);

struct VerifyCheck {
  std::string name;
  double reference = 0.0;
  double estimate = 0.0;
  std::optional<double> std_error;
  bool pass = false;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  std::size_t failures = 0;
  bool pass() const { return failures == 0; }
};

VerifyResult run_verify(const VerifyOptions& options);

// CSV: check,reference,estimate,std_error,verdict
void write_verify_csv(const VerifyResult& result, std::ostream& out);

}  // namespace wfc::cli
