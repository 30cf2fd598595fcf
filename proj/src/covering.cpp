#include "covfrac/covering.hpp"

#include <algorithm>
#include <set>

namespace covfrac {

namespace {

void sort_unique(std::vector<Cube>& cubes) {
  std::sort(cubes.begin(), cubes.end(),
            [](const Cube& a, const Cube& b) { return a.prefix < b.prefix; });
  cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
}

// Collects level-k cubes meeting the ball; when the cube interval lies
// inside the ball it is also a containment hit (Z-type).
void scan_block(const DigitSpace& space, const BallScan& scan, int k,
                const Prefix& prefix, std::int64_t a, int level,
                std::vector<Cube>& intersect, std::vector<Cube>& contain) {
  if (scan.disjoint(level, a)) return;
  if (level == k) {
    intersect.push_back(Cube{k, prefix});
    if (scan.contains_cube(k, a)) contain.push_back(Cube{k, prefix});
    return;
  }
  for (Digit d : space.alphabet()) {
    Prefix child = prefix;
    child.push_back(d);
    scan_block(space, scan, k, child, a * space.base() + d, level + 1,
               intersect, contain);
  }
}

void scan_target(const DigitSpace& space, const TargetSet& target,
                 const BallScan& scan, int k, const Prefix& prefix,
                 std::int64_t a, int level, std::set<Prefix>& hits) {
  if (scan.disjoint(level, a)) return;
  if (level == k) {
    hits.insert(prefix);
    return;
  }
  for (Digit d : target.allowed(level + 1)) {
    Prefix child = prefix;
    child.push_back(d);
    scan_target(space, target, scan, k, child, a * space.base() + d, level + 1,
                hits);
  }
}

}  // namespace

CoverTrace simulate_cover(const DigitSpace& space, const BlockTable& table,
                          const RadiusSequence& seq, OrbitSource& src, int K) {
  if (K > table.K) throw truncation_error("block table shorter than K");
  int depth = std::min(K + 2, space.depth_cap());
  space.check_depth(K);
  CoverTrace trace;
  trace.seed = src.seed();
  trace.K = K;
  trace.blocks.resize(K);
  for (int k = 1; k <= K; ++k) {
    const Block& blk = table.block(k);
    BlockRecord& rec = trace.blocks[k - 1];
    rec.k = k;
    rec.n_k = blk.count;
    rec.m_k = static_cast<std::int64_t>(blk.sparse.size());
    for (std::int64_t n : blk.sparse) {
      Rat radius = seq.radius(n);
      if (radius > 1) radius = 1;  // degenerate early blocks cover X
      Ball ball{src.orbit_point(n, depth).value, radius};
      BallScan scan(space, ball, k);
      scan_block(space, scan, k, {}, 0, 0, rec.intersect_hits,
                 rec.contain_hits);
      rec.balls.push_back(std::move(ball));
    }
    sort_unique(rec.intersect_hits);
    sort_unique(rec.contain_hits);
  }
  return trace;
}

bool hit_target(const CoverTrace& trace, const TargetSet& target, int k_min,
                int K) {
  if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
  for (int k = k_min; k <= K; ++k) {
    const BlockRecord& rec = trace.block(k);
    if (rec.m_k == 0) continue;
    bool found = false;
    for (const Cube& c : rec.contain_hits)
      if (target.cube_meets(c)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<std::int64_t> target_hit_counts(const CoverTrace& trace,
                                            const TargetSet& target) {
  std::vector<std::int64_t> counts(trace.K, 0);
  for (int k = 1; k <= trace.K; ++k)
    for (const Cube& c : trace.block(k).intersect_hits)
      if (target.cube_meets(c)) ++counts[k - 1];
  return counts;
}

namespace {

std::vector<LevelCount> union_cube_counts(const CoverTrace& trace,
                                          const TargetSet& target, int m0,
                                          bool scale_matched) {
  const DigitSpace& space = target.space();
  std::vector<LevelCount> table;
  for (int k = 1; k <= trace.K; ++k) {
    std::set<Prefix> hits;
    // matched mode: block k only (the A(k) stage of the limsup set);
    // deeper blocks would re-hit every coarse cube holding an orbit
    // point and saturate the small-k counts.
    int j0 = scale_matched ? std::max(m0, k) : std::max(m0, 1);
    int j1 = scale_matched ? std::max(m0, k) : trace.K;
    if (j1 > trace.K) j1 = 0;  // level below m0 window: no balls counted
    for (int j = j0; j <= j1; ++j)
      for (const Ball& ball : trace.block(j).balls) {
        BallScan scan(space, ball, k);
        scan_target(space, target, scan, k, {}, 0, 0, hits);
      }
    table.push_back(LevelCount{k, static_cast<std::int64_t>(hits.size())});
  }
  return table;
}

}  // namespace

std::vector<LevelCount> limsup_cube_counts(const CoverTrace& trace,
                                           const TargetSet& target, int m0) {
  return union_cube_counts(trace, target, m0, false);
}

std::vector<LevelCount> matched_cube_counts(const CoverTrace& trace,
                                            const TargetSet& target, int m0) {
  return union_cube_counts(trace, target, m0, true);
}

}  // namespace covfrac
