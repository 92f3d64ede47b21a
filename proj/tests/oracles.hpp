#pragma once

// Test-only reference computations. Nothing here calls into wfc numerics.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

namespace wfc::testing {

// Composite Simpson on a fixed uniform mesh.
inline double composite_simpson(const std::function<double(double)>& f, double a, double b,
                                 int panels = 20000) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

// Top-two gap of n uniforms on [0, mu] drawn from a standard library engine.
inline double sample_gap(std::mt19937_64& engine, int n, double mu) {
  std::uniform_real_distribution<double> u(0.0, mu);
  double top = -1.0;
  double second = -1.0;
  for (int i = 0; i < n; ++i) {
    const double c = u(engine);
    if (c > top) {
      second = top;
      top = c;
    } else if (c > second) {
      second = c;
    }
  }
  return top - second;
}

struct SampleMean {
  double mean;
  double std_error;
};

template <class Draw>
SampleMean sample_mean(std::uint64_t trials, Draw&& draw) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double x = draw();
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / trials;
  const double var = (sum_sq - trials * mean * mean) / (trials - 1);
  return {mean, std::sqrt(var / trials)};
}

}  // namespace wfc::testing
