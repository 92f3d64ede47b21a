#pragma once

#include <cstddef>
#include <functional>

namespace wfc::numeric {

struct BisectionResult {
  double root = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Bisection on [lo, hi] where f(lo) >= 0 > f(hi) or f(lo) < 0 <= f(hi).
// Stops once the bracket is narrower than tol. Throws std::invalid_argument
// when the endpoints do not bracket a sign change.
BisectionResult bisect(const std::function<double(double)>& f, double lo, double hi,
                       double tol = 1e-10, std::size_t max_iter = 200);

// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 50);

}  // namespace wfc::numeric
