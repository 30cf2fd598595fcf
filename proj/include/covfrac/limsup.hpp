#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "covfrac/estimator.hpp"
#include "covfrac/space.hpp"
#include "covfrac/targets.hpp"

namespace covfrac {

struct degenerate_target_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Retention-probability field P_n(Q) for a limsup random fractal.
// Presets keep the min/max level-n exponents at prescribed gamma1 <=
// gamma2; the Bernoulli draws are independent (delta = 0).
class LimsupModel {
 public:
  enum class Dependence { Independent, SiblingCoupled };

  // constant exponent field: P_n(Q) = b^{n*gamma}
  static LimsupModel constant_field(const DigitSpace& space, int depth,
                                    double gamma);
  // two-exponent field: cubes whose first digit is the smallest alphabet
  // digit get exponent gamma1, all others gamma2
  static LimsupModel split_field(const DigitSpace& space, int depth,
                                 double gamma1, double gamma2);

  const DigitSpace& space() const { return *space_; }
  int depth() const { return depth_; }
  double gamma1() const { return gamma1_; }
  double gamma2() const { return gamma2_; }
  Dependence dependence() const { return dependence_; }
  void set_dependence(Dependence d) { dependence_ = d; }

  double retention(int n, const Cube& q) const;

  // min/max over all level-n cubes of -log_b P_n(Q) / n.
  double min_exponent(int n) const;
  double max_exponent(int n) const;

 private:
  LimsupModel(const DigitSpace& space, int depth, double g1, double g2);
  const DigitSpace* space_;
  int depth_;
  double gamma1_, gamma2_;
  Dependence dependence_ = Dependence::Independent;
};

// Monte Carlo hitting frequency of the limsup fractal against G. Only
// cubes meeting G are sampled (pruned sampling); a trial is a hit when
// every level in the tail window [n_min, depth] has a surviving G-cube.
HitFrequency sample_limsup_hits(const LimsupModel& model,
                                const TargetSet& target, std::int64_t trials,
                                std::uint64_t master_seed, int n_min = 3,
                                int jobs = 0);

// Per-trial hit flags behind sample_limsup_hits (trial i uses seed
// derive_seed(master, i) regardless of jobs).
std::vector<char> sample_limsup_flags(const LimsupModel& model,
                                      const TargetSet& target,
                                      std::int64_t trials,
                                      std::uint64_t master_seed, int n_min = 3,
                                      int jobs = 0);

// Per-level survivor counts of a single limsup-field sample over the
// full cube tree (used for the dimension check; exponential in depth).
std::vector<std::int64_t> sample_limsup_level_counts(const LimsupModel& model,
                                                     std::uint64_t seed);

struct PercolationRun {
  double retention_p = 0;  // in (0,1]
  int depth = 0;

  static double p_from_bit_exponent(double t) { return std::pow(2.0, -t); }
};

struct PercolationSample {
  std::vector<std::int64_t> survivors;  // per level 1..depth
  bool target_hit = false;              // depth-N survivor meets G
};

// Top-down Bernoulli pruning of the cube tree; survivors form a subtree.
PercolationSample percolation_sample(const DigitSpace& space,
                                     const PercolationRun& run,
                                     const TargetSet* target,
                                     std::uint64_t seed);

// Hit frequency of the union of `copies` independent percolations.
HitFrequency percolation_union_hits(const DigitSpace& space,
                                    const PercolationRun& run, int copies,
                                    const TargetSet& target,
                                    std::int64_t trials,
                                    std::uint64_t master_seed, int jobs = 0);

std::vector<char> percolation_union_flags(const DigitSpace& space,
                                          const PercolationRun& run,
                                          int copies, const TargetSet& target,
                                          std::int64_t trials,
                                          std::uint64_t master_seed,
                                          int jobs = 0);

// Correlation-length profile f(n, eps) computed from the declared joint
// law (no sampling): 1 for independent fields, 2 for sibling-coupled.
std::int64_t correlation_profile(const LimsupModel& model, double eps, int n);

}  // namespace covfrac
