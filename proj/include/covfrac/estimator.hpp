#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace covfrac {

struct insufficient_data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct out_of_theory_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CountRow {
  int k = 0;
  double count = 0;  // N_k >= 1 (may be a cross-trial mean)
};

struct DimEstimate {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  double r2 = 0;
  int k_lo = 0, k_hi = 0;
  std::vector<CountRow> table;
};

// Least-squares slope of log N_k against k log m over the window; the
// slope is the box-dimension estimate.
DimEstimate box_dimension(const std::vector<CountRow>& counts, int base,
                          int k_lo, int k_hi);

// Default regression window: drop the 3 coarsest and 1 finest levels.
std::pair<int, int> default_window(int k_min, int k_max);

enum class Regime { Empty, IndeterminateCritical, Bounds, Exact };

const char* to_string(Regime r);

constexpr double kNegInf = -1e300;  // paper convention: dim(empty) = -inf

struct Prediction {
  Regime regime = Regime::Empty;
  double dim_lower = kNegInf;  // predicted dim_H(E cap G) interval
  double dim_upper = kNegInf;
  double dim_packing = kNegInf;  // predicted dim_P(E cap G), under (C)
  double s = 0, alpha = 0, dimH_G = 0, dimP_G = 0;
};

// Hitting/dimension dichotomy: Empty when dim_P G < s - alpha; bounds
// [dim_H G + alpha - s, dim_P G + alpha - s] when dim_H G > s - alpha
// (Exact when the two agree); the critical strip is reported as
// theory-indeterminate.
Prediction predict(double s, double alpha, double dimH_G, double dimP_G);

struct HitFrequency {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double frequency = 0;
  double ci_low = 0;  // Wilson 95%
  double ci_high = 0;
};

HitFrequency wilson_interval(std::int64_t hits, std::int64_t trials);

// Requires >= 30 trials.
HitFrequency hit_probability(const std::vector<bool>& flags);

}  // namespace covfrac
