#include "covfrac/estimator.hpp"

#include <cmath>

namespace covfrac {

DimEstimate box_dimension(const std::vector<CountRow>& counts, int base,
                          int k_lo, int k_hi) {
  if (k_hi - k_lo < 4)
    throw insufficient_data_error("window must span at least 5 levels");
  std::vector<CountRow> used;
  for (const CountRow& row : counts)
    if (row.k >= k_lo && row.k <= k_hi && row.count >= 1) used.push_back(row);
  if (used.size() < 5)
    throw insufficient_data_error("fewer than 5 usable window points");

  double log_m = std::log(static_cast<double>(base));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const CountRow& row : used) {
    double x = row.k * log_m;
    double y = std::log(row.count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(used.size());
  double denom = n * sxx - sx * sx;
  DimEstimate est;
  est.slope = (n * sxy - sx * sy) / denom;
  est.intercept = (sy - est.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean_y = sy / n;
  for (const CountRow& row : used) {
    double x = row.k * log_m;
    double y = std::log(row.count);
    double r = y - (est.intercept + est.slope * x);
    ss_res += r * r;
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  est.stderr_slope =
      n > 2 ? std::sqrt(ss_res / (n - 2) / (sxx - sx * sx / n)) : 0.0;
  est.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  est.k_lo = k_lo;
  est.k_hi = k_hi;
  est.table = used;
  return est;
}

std::pair<int, int> default_window(int k_min, int k_max) {
  return {k_min + 3, k_max - 1};
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Empty: return "Empty";
    case Regime::IndeterminateCritical: return "IndeterminateCritical";
    case Regime::Bounds: return "Bounds";
    case Regime::Exact: return "Exact";
  }
  return "?";
}

Prediction predict(double s, double alpha, double dimH_G, double dimP_G) {
  if (!(alpha > 0 && alpha < s))
    throw out_of_theory_error("requires 0 < alpha < s");
  Prediction p;
  p.s = s;
  p.alpha = alpha;
  p.dimH_G = dimH_G;
  p.dimP_G = dimP_G;
  double crit = s - alpha;
  if (dimP_G < crit) {
    p.regime = Regime::Empty;
    return p;
  }
  if (dimH_G > crit) {
    p.dim_lower = dimH_G + alpha - s;
    p.dim_upper = dimP_G + alpha - s;
    p.regime = dimH_G == dimP_G ? Regime::Exact : Regime::Bounds;
  } else {
    p.regime = Regime::IndeterminateCritical;
    p.dim_upper = dimP_G + alpha - s;
  }
  if (dimP_G > crit) p.dim_packing = dimP_G;
  return p;
}

HitFrequency wilson_interval(std::int64_t hits, std::int64_t trials) {
  if (trials <= 0) throw insufficient_data_error("no trials");
  HitFrequency f;
  f.trials = trials;
  f.hits = hits;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(hits) / n;
  f.frequency = p;
  const double z = 1.959963984540054;  // 95%
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  f.ci_low = std::max(0.0, center - half);
  f.ci_high = std::min(1.0, center + half);
  return f;
}

HitFrequency hit_probability(const std::vector<bool>& flags) {
  if (flags.size() < 30)
    throw insufficient_data_error("need at least 30 trials");
  std::int64_t hits = 0;
  for (bool b : flags) hits += b;
  return wilson_interval(hits, static_cast<std::int64_t>(flags.size()));
}

}  // namespace covfrac
