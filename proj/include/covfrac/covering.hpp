#pragma once

#include <cstdint>
#include <vector>

#include "covfrac/process.hpp"
#include "covfrac/sequences.hpp"
#include "covfrac/space.hpp"
#include "covfrac/targets.hpp"

namespace covfrac {

struct BlockRecord {
  int k = 0;
  std::int64_t n_k = 0;
  std::int64_t m_k = 0;            // #sparse indices simulated
  std::vector<Ball> balls;         // I_n for n in J'_k, radii clamped to 1
  std::vector<Cube> intersect_hits;  // X_Q = 1: cube meets some ball
  std::vector<Cube> contain_hits;    // Z_k = 1: doubled cube inside some ball
};

// One simulated realization: per-block balls and the two hit sets. The
// containment notion feeds lower-bound logic, the intersection notion
// upper-bound logic; they are never conflated.
struct CoverTrace {
  std::uint64_t seed = 0;
  int K = 0;
  std::vector<BlockRecord> blocks;  // blocks[k-1] is block k

  const BlockRecord& block(int k) const { return blocks.at(k - 1); }
};

// Simulates one realization: for each block k <= K and each sparse index
// n, forms I_n = B(xi_n, ell_n) exactly and classifies level-k cubes via
// pruned tree descent (never a full level scan).
CoverTrace simulate_cover(const DigitSpace& space, const BlockTable& table,
                          const RadiusSequence& seq, OrbitSource& src, int K);

// Finite-depth hitting proxy: true iff every nonempty block k in
// [k_min, K] has a containment-hit cube meeting G.
bool hit_target(const CoverTrace& trace, const TargetSet& target, int k_min,
                int K);

// S_k = #(intersection hits meeting G) per block.
std::vector<std::int64_t> target_hit_counts(const CoverTrace& trace,
                                            const TargetSet& target);

struct LevelCount {
  int k = 0;
  std::int64_t count = 0;
};

// Counts level-k cubes of G meeting the union of all balls from blocks
// in [m0, K], for k = 1..K. Monotone non-increasing in m0.
std::vector<LevelCount> limsup_cube_counts(const CoverTrace& trace,
                                           const TargetSet& target, int m0);

// Scale-matched variant: level-k cubes of G meeting balls of block
// max(k, m0) only — the A(k) stage of the limsup construction. The
// plain union's counts are dominated by balls at the wrong scale (slope
// dim G); the matched slope estimates dim(E cap G).
std::vector<LevelCount> matched_cube_counts(const CoverTrace& trace,
                                            const TargetSet& target, int m0);

}  // namespace covfrac
