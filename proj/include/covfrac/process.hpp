#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "covfrac/space.hpp"

namespace covfrac {

struct insufficient_samples_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// splitmix64 step; used to derive independent per-trial seeds from a
// master seed without coordination.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Orbit of the base-m shift realized as an i.i.d. uniform digit stream:
// the n-th orbit point is the stream shifted by n-1 digits. Deterministic
// given (seed, n, depth).
class OrbitSource {
 public:
  OrbitSource(const DigitSpace& space, std::uint64_t seed);

  const DigitSpace& space() const { return *space_; }
  std::uint64_t seed() const { return seed_; }

  Point orbit_point(std::int64_t n, int depth);
  Digit stream_digit(std::int64_t i);  // 0-based position in the seed stream

 private:
  const DigitSpace* space_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<Digit> stream_;  // memoized; extended on demand
};

struct MixingRow {
  int offset = 0;       // n
  double deviation = 0; // |P(xi_1 in A | xi_{n+1} in D) - mu(A)|
  double sigma = 0;     // binomial 1-sigma scale for the estimate
  std::int64_t conditioned_trials = 0;
};

// Empirical decay table for the dependence between a cylinder event at
// time 1 and one at time n+1, over independently seeded orbits. A
// necessary-condition diagnostic, not a proof of mixing.
std::vector<MixingRow> mixing_diagnostic(const DigitSpace& space,
                                         std::uint64_t master_seed,
                                         const Cube& event_a,
                                         const Cube& event_d,
                                         const std::vector<int>& offsets,
                                         std::int64_t trials);

}  // namespace covfrac
