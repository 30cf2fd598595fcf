#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

#include "covfrac/rational.hpp"

namespace covfrac {

struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct estimate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ell_n = m-adic rounding (down, grid m^{-grid_depth}) of n^{-1/alpha0}.
struct PowerLaw {
  Rat alpha0;      // > 0
  int base;        // rounding grid base m
  int grid_depth;  // K_cap
};

// Synthetic per-block counts k -> n_k; block-k radii all equal b^{k-1}
// with b = 1/base.
struct BlockProfile {
  std::map<int, std::int64_t> counts;
  int base = 2;
};

struct ExplicitList {
  std::vector<Rat> radii;  // positive, non-increasing
};

// A non-increasing positive sequence {ell_n}, materialized lazily.
class RadiusSequence {
 public:
  using Kind = std::variant<PowerLaw, BlockProfile, ExplicitList>;

  explicit RadiusSequence(Kind kind);

  // 1-based; exact rational value.
  Rat radius(std::int64_t n) const;

  // Largest index materializable: last n with ell_n > 0 known, or the
  // given bound for power laws (infinite sequences).
  std::int64_t last_index_with_radius_at_least(const Rat& threshold) const;

  bool is_power_law() const {
    return std::holds_alternative<PowerLaw>(kind_);
  }
  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

struct Block {
  int k = 0;                   // scale band [b^{k-1}, b^{k-2})
  std::int64_t first = 0;      // first index in the block (1-based), 0 if empty
  std::int64_t count = 0;      // n_k
  std::vector<std::int64_t> sparse;  // selected indices J'_k
};

// Per-block decomposition of the index range, with sparse selections.
struct BlockTable {
  Rat b;  // scale, 1/m
  int K = 0;
  double gap_constant = 0.0;  // c
  std::vector<Block> blocks;  // blocks[k-1] is block k, k = 1..K

  const Block& block(int k) const { return blocks.at(k - 1); }
  std::int64_t total_count() const;
  std::int64_t sparse_count(int k) const {
    return static_cast<std::int64_t>(block(k).sparse.size());
  }
};

// Exact n_k = #{n : ell_n in [b^{k-1}, b^{k-2})} for k = 1..K.
// Power-law sequences are scanned by binary search; finite lists directly.
BlockTable block_counts(const RadiusSequence& seq, const Rat& b, int K);

// Trailing-window max of log_{1/b}(N_{<=k})/k over the cumulative counts
// N_{<=k} = n_1 + ... + n_k: the convergence-exponent form of the upper
// Besicovitch-Taylor index, which kills the constant-offset bias the
// per-block form log(n_k)/k carries at finite K.
double bt_index_estimate(const BlockTable& table, int window);

struct ConditionCResult {
  bool holds_on_prefix = false;
  std::vector<int> witness;  // selected block indices k_i
};

// Selects all k with |log_{1/b}(n_k)/k - alpha| <= tol and checks the
// consecutive-ratio criterion on the asymptotic part of the witness
// (k >= ceil(1/tol); small k cannot satisfy ratio -> 1 at finite depth).
ConditionCResult condition_c_check(const BlockTable& table, double alpha,
                                   double tol);

// Greedy left-to-right maximal selection with index gaps >= ceil(c*k).
void sparse_indices(BlockTable& table, double c);

// Default gap constant: 2 (s - alpha_hat) / log(1/rho) with the
// diagnostic rho = 1/m.
double default_gap_constant(double s, double alpha_hat, int base);

}  // namespace covfrac
