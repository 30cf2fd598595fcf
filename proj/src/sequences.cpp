#include "covfrac/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace covfrac {

namespace {

// Exact m-adic floor of n^{-q/p}: largest v with v^p * n^q <= m^{G p},
// returned as v / m^G.
Rat power_law_radius(const PowerLaw& pl, std::int64_t n) {
  const auto p = static_cast<unsigned>(numerator(pl.alpha0).convert_to<std::int64_t>());
  const auto q = static_cast<unsigned>(denominator(pl.alpha0).convert_to<std::int64_t>());
  BigInt grid = ipow(BigInt(pl.base), static_cast<unsigned>(pl.grid_depth));
  BigInt bound = ipow(grid, p);
  BigInt nq = ipow(BigInt(n), q);
  BigInt v = iroot(bound / nq, p);
  if (v == 0)
    throw truncation_error("radius underflows the m-adic grid at n=" +
                           std::to_string(n));
  return Rat(v, grid);
}

struct ProfileIndex {
  // cumulative counts: block k covers indices (cum[k-1], cum[k]]
  std::vector<std::int64_t> cum;  // cum[0] = 0
};

ProfileIndex profile_index(const BlockProfile& bp) {
  ProfileIndex pi;
  int k_max = bp.counts.empty() ? 0 : bp.counts.rbegin()->first;
  pi.cum.assign(k_max + 1, 0);
  for (int k = 1; k <= k_max; ++k) {
    auto it = bp.counts.find(k);
    pi.cum[k] = pi.cum[k - 1] + (it == bp.counts.end() ? 0 : it->second);
  }
  return pi;
}

}  // namespace

RadiusSequence::RadiusSequence(Kind kind) : kind_(std::move(kind)) {
  if (auto* pl = std::get_if<PowerLaw>(&kind_)) {
    if (pl->alpha0 <= 0) throw std::invalid_argument("alpha0 must be > 0");
    if (pl->base < 2) throw std::invalid_argument("bad rounding base");
  } else if (auto* el = std::get_if<ExplicitList>(&kind_)) {
    for (std::size_t i = 0; i < el->radii.size(); ++i) {
      if (el->radii[i] <= 0) throw std::invalid_argument("radius must be > 0");
      if (i && el->radii[i] > el->radii[i - 1])
        throw std::invalid_argument("radii must be non-increasing");
    }
  }
}

Rat RadiusSequence::radius(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("index must be >= 1");
  if (auto* pl = std::get_if<PowerLaw>(&kind_)) return power_law_radius(*pl, n);
  if (auto* bp = std::get_if<BlockProfile>(&kind_)) {
    auto pi = profile_index(*bp);
    if (n > pi.cum.back())
      throw truncation_error("index beyond block profile");
    auto it = std::lower_bound(pi.cum.begin(), pi.cum.end(), n);
    int k = static_cast<int>(it - pi.cum.begin());
    // block-k radii sit at the top of the band [b^{k-1}, b^{k-2})
    return pow_rat(bp->base, -(k - 1));
  }
  const auto& el = std::get<ExplicitList>(kind_);
  if (n > static_cast<std::int64_t>(el.radii.size()))
    throw truncation_error("index beyond explicit list");
  return el.radii[n - 1];
}

std::int64_t RadiusSequence::last_index_with_radius_at_least(
    const Rat& threshold) const {
  if (auto* el = std::get_if<ExplicitList>(&kind_)) {
    std::int64_t count = 0;
    for (const Rat& r : el->radii)
      if (r >= threshold) ++count;
    return count;
  }
  if (auto* bp = std::get_if<BlockProfile>(&kind_)) {
    auto pi = profile_index(*bp);
    std::int64_t count = 0;
    for (int k = 1; k < static_cast<int>(pi.cum.size()); ++k)
      if (pow_rat(bp->base, -(k - 1)) >= threshold)
        count = pi.cum[k];
    return count;
  }
  // power law: binary search on the monotone radius
  if (radius(1) < threshold) return 0;
  std::int64_t lo = 1, hi = 2;
  auto at_least = [&](std::int64_t n) {
    try {
      return radius(n) >= threshold;
    } catch (const truncation_error&) {
      return false;
    }
  };
  while (at_least(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (lo + 1 < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (at_least(mid) ? lo : hi) = mid;
  }
  return lo;
}

std::int64_t BlockTable::total_count() const {
  std::int64_t t = 0;
  for (const auto& blk : blocks) t += blk.count;
  return t;
}

BlockTable block_counts(const RadiusSequence& seq, const Rat& b, int K) {
  if (K < 3) throw std::invalid_argument("K must be >= 3");
  if (!(b > 0 && b < 1)) throw std::invalid_argument("b must be in (0,1)");
  if (seq.is_power_law()) {
    const auto& pl = std::get<PowerLaw>(seq.kind());
    Rat band = 1;
    for (int i = 0; i < K - 1; ++i) band *= b;
    if (pow_rat(pl.base, -pl.grid_depth) > band)
      throw truncation_error("grid too coarse for K blocks");
  }
  BlockTable table;
  table.b = b;
  table.K = K;
  table.blocks.resize(K);
  // f(t) = #{n : ell_n >= t}; block k holds f(b^{k-1}) - f(b^{k-2}) indices.
  std::vector<std::int64_t> f(K + 1, 0);
  Rat t = 1 / b;  // b^{k-2} for k = 1
  for (int k = 1; k <= K; ++k) {
    f[k] = seq.last_index_with_radius_at_least(t * b);
    t *= b;
  }
  // radii >= 1 are folded into block 1 (they get clamped downstream), so
  // the blocks partition the whole materialized range
  std::int64_t prev = 0;
  for (int k = 1; k <= K; ++k) {
    Block& blk = table.blocks[k - 1];
    blk.k = k;
    blk.count = f[k] - prev;
    blk.first = blk.count > 0 ? prev + 1 : 0;
    prev = f[k];
  }
  return table;
}

double bt_index_estimate(const BlockTable& table, int window) {
  if (window < 3 || window > table.K)
    throw std::invalid_argument("window must be in [3, K]");
  // Counting-function exponent: max over the trailing window of
  // log_{1/b}(N_k)/k with N_k the number of indices through block k.
  // Converges O(1/k) faster than the per-block ratio, same limsup.
  double log_inv_b = -std::log(to_double(table.b));
  double best = -1;
  std::int64_t cum = 0;
  for (int k = 1; k <= table.K; ++k) {
    cum += table.block(k).count;
    if (k <= table.K - window || table.block(k).count == 0) continue;
    best = std::max(best, std::log(static_cast<double>(cum)) / (k * log_inv_b));
  }
  if (best < 0) throw estimate_error("all blocks in window empty");
  return best;
}

ConditionCResult condition_c_check(const BlockTable& table, double alpha,
                                   double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be > 0");
  ConditionCResult res;
  double log_inv_b = -std::log(to_double(table.b));
  for (int k = 1; k <= table.K; ++k) {
    std::int64_t nk = table.block(k).count;
    if (nk < 1) continue;
    double ratio = std::log(static_cast<double>(nk)) / (k * log_inv_b);
    if (std::abs(ratio - alpha) <= tol) res.witness.push_back(k);
  }
  if (res.witness.empty()) return res;
  // Ratio -> 1 is only checkable where (k+1)/k itself can fall under
  // 1 + tol, so the small-k head of the witness is ignored.
  int k_floor = static_cast<int>(std::ceil(1.0 / tol));
  int prev = 0;
  bool ok = false;
  for (int k : res.witness) {
    if (k < k_floor) continue;
    if (prev > 0 &&
        static_cast<double>(k) / prev > 1.0 + tol)
      return res;  // holds_on_prefix stays false
    prev = k;
    ok = true;
  }
  res.holds_on_prefix = ok;
  return res;
}

void sparse_indices(BlockTable& table, double c) {
  if (c <= 0) throw std::invalid_argument("gap constant must be > 0");
  table.gap_constant = c;
  for (Block& blk : table.blocks) {
    blk.sparse.clear();
    if (blk.count == 0) continue;
    auto gap = static_cast<std::int64_t>(std::ceil(c * blk.k));
    gap = std::max<std::int64_t>(gap, 1);
    for (std::int64_t j = blk.first; j < blk.first + blk.count; j += gap)
      blk.sparse.push_back(j);
  }
}

double default_gap_constant(double s, double alpha_hat, int base) {
  double c = 2.0 * (s - alpha_hat) / std::log(static_cast<double>(base));
  return std::max(c, 0.05);
}

}  // namespace covfrac
