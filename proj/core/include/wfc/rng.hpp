#pragma once

// Counter-keyed SplitMix64 streams.
//
// Every Monte Carlo trial owns a stream keyed by (seed, trial index), so a
// trial's draws never depend on which thread ran it or in what order. The
// key derivation and the output function are part of the reproducibility
// contract; changing either changes every published estimate.

#include <cstdint>

namespace wfc {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class StreamRng {
 public:
  constexpr StreamRng(std::uint64_t seed, std::uint64_t stream)
      : state_(splitmix64_mix(seed ^ splitmix64_mix(stream + kGoldenGamma))) {}

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

  // 53-bit uniform on [0, 1).
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Child seed for sub-tasks (lattice points, grid cells) of a seeded run.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_mix(splitmix64_mix(seed) + index * kGoldenGamma + 1);
}

}  // namespace wfc
