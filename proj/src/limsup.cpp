#include "covfrac/limsup.hpp"

#include <algorithm>
#include <cmath>

#include "covfrac/runner.hpp"

namespace covfrac {

LimsupModel::LimsupModel(const DigitSpace& space, int depth, double g1,
                         double g2)
    : space_(&space), depth_(depth), gamma1_(g1), gamma2_(g2) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(g1 >= 0) || g1 > g2)
    throw std::invalid_argument("need 0 <= gamma1 <= gamma2");
  space.check_depth(depth);
}

LimsupModel LimsupModel::constant_field(const DigitSpace& space, int depth,
                                        double gamma) {
  return LimsupModel(space, depth, gamma, gamma);
}

LimsupModel LimsupModel::split_field(const DigitSpace& space, int depth,
                                     double gamma1, double gamma2) {
  return LimsupModel(space, depth, gamma1, gamma2);
}

double LimsupModel::retention(int n, const Cube& q) const {
  if (n < 1 || q.level != n || q.prefix.empty())
    throw std::invalid_argument("cube level mismatch");
  double g = (q.prefix.front() == space_->alphabet().front()) ? gamma1_
                                                              : gamma2_;
  return std::pow(static_cast<double>(space_->base()), -g * n);
}

double LimsupModel::min_exponent(int n) const {
  (void)n;
  return gamma1_;
}

double LimsupModel::max_exponent(int n) const {
  (void)n;
  return gamma2_;
}

namespace {

// Level-n cubes of G split by whether their first digit is the smallest
// alphabet digit (the gamma1 class of the split field).
struct LevelSplit {
  std::int64_t low = 0;   // gamma1 cubes
  std::int64_t high = 0;  // gamma2 cubes
};

std::vector<LevelSplit> target_split(const LimsupModel& model,
                                     const TargetSet& target) {
  const DigitSpace& sp = model.space();
  std::vector<LevelSplit> out(model.depth() + 1);
  const std::vector<Digit>& first = target.allowed(1);
  bool has_low = std::find(first.begin(), first.end(),
                           sp.alphabet().front()) != first.end();
  std::int64_t tail = 1;
  for (int n = 1; n <= model.depth(); ++n) {
    if (n > 1) tail *= static_cast<std::int64_t>(target.allowed(n).size());
    out[n].low = has_low ? tail : 0;
    out[n].high =
        (static_cast<std::int64_t>(first.size()) - (has_low ? 1 : 0)) * tail;
  }
  return out;
}

bool level_has_survivor(std::mt19937_64& rng, const LevelSplit& split,
                        double p1, double p2) {
  // Independent Bernoulli field: the survivor count per exponent class
  // is binomial, and only positivity matters here.
  std::int64_t s = 0;
  if (split.low > 0)
    s += std::binomial_distribution<std::int64_t>(split.low, p1)(rng);
  if (split.high > 0)
    s += std::binomial_distribution<std::int64_t>(split.high, p2)(rng);
  return s > 0;
}

}  // namespace

std::vector<char> sample_limsup_flags(const LimsupModel& model,
                                      const TargetSet& target,
                                      std::int64_t trials,
                                      std::uint64_t master_seed, int n_min,
                                      int jobs) {
  if (target.cube_count(1) == 0)
    throw degenerate_target_error("target has no level-1 cubes");
  if (n_min < 1 || n_min > model.depth())
    throw std::invalid_argument("n_min out of range");
  const int b = model.space().base();
  std::vector<LevelSplit> split = target_split(model, target);
  std::vector<double> p1(model.depth() + 1), p2(model.depth() + 1);
  for (int n = 1; n <= model.depth(); ++n) {
    p1[n] = std::pow(static_cast<double>(b), -model.gamma1() * n);
    p2[n] = std::pow(static_cast<double>(b), -model.gamma2() * n);
  }
  return run_trials(trials, master_seed, jobs,
                    [&](std::int64_t, std::uint64_t seed) -> char {
                      std::mt19937_64 rng(seed);
                      for (int n = n_min; n <= model.depth(); ++n)
                        if (!level_has_survivor(rng, split[n], p1[n], p2[n]))
                          return 0;
                      return 1;
                    });
}

HitFrequency sample_limsup_hits(const LimsupModel& model,
                                const TargetSet& target, std::int64_t trials,
                                std::uint64_t master_seed, int n_min,
                                int jobs) {
  std::vector<char> flags =
      sample_limsup_flags(model, target, trials, master_seed, n_min, jobs);
  std::int64_t hits = 0;
  for (char f : flags) hits += f;
  return wilson_interval(hits, trials);
}

std::vector<std::int64_t> sample_limsup_level_counts(const LimsupModel& model,
                                                     std::uint64_t seed) {
  const DigitSpace& sp = model.space();
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> counts(model.depth(), 0);
  std::int64_t per_digit = 1;  // level-n cubes sharing a fixed first digit
  for (int n = 1; n <= model.depth(); ++n) {
    if (n > 1) per_digit *= static_cast<std::int64_t>(sp.alphabet().size());
    double p1 = std::pow(static_cast<double>(sp.base()), -model.gamma1() * n);
    double p2 = std::pow(static_cast<double>(sp.base()), -model.gamma2() * n);
    std::int64_t rest =
        per_digit * (static_cast<std::int64_t>(sp.alphabet().size()) - 1);
    counts[n - 1] =
        std::binomial_distribution<std::int64_t>(per_digit, p1)(rng) +
        (rest > 0
             ? std::binomial_distribution<std::int64_t>(rest, p2)(rng)
             : 0);
  }
  return counts;
}

PercolationSample percolation_sample(const DigitSpace& space,
                                     const PercolationRun& run,
                                     const TargetSet* target,
                                     std::uint64_t seed) {
  if (!(run.retention_p > 0) || run.retention_p > 1)
    throw std::invalid_argument("retention_p must be in (0,1]");
  space.check_depth(run.depth);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(run.retention_p);
  PercolationSample out;
  out.survivors.assign(run.depth, 0);

  // Depth-first pruning; in_g tracks whether the digit path so far stays
  // inside the target restriction tree.
  std::function<void(int, bool)> walk = [&](int level, bool in_g) {
    if (level == run.depth) {
      if (in_g) out.target_hit = true;
      return;
    }
    for (Digit d : space.alphabet()) {
      if (!keep(rng)) continue;
      ++out.survivors[level];
      bool child_in_g = in_g;
      if (child_in_g && target) {
        const std::vector<Digit>& allow = target->allowed(level + 1);
        child_in_g =
            std::find(allow.begin(), allow.end(), d) != allow.end();
      }
      walk(level + 1, child_in_g);
    }
  };
  walk(0, target != nullptr);
  return out;
}

std::vector<char> percolation_union_flags(const DigitSpace& space,
                                          const PercolationRun& run,
                                          int copies, const TargetSet& target,
                                          std::int64_t trials,
                                          std::uint64_t master_seed,
                                          int jobs) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  return run_trials(
      trials, master_seed, jobs,
      [&](std::int64_t, std::uint64_t seed) -> char {
        for (int c = 0; c < copies; ++c) {
          PercolationSample s = percolation_sample(
              space, run, &target,
              derive_seed(seed, static_cast<std::uint64_t>(c)));
          if (s.target_hit) return 1;
        }
        return 0;
      });
}

HitFrequency percolation_union_hits(const DigitSpace& space,
                                    const PercolationRun& run, int copies,
                                    const TargetSet& target,
                                    std::int64_t trials,
                                    std::uint64_t master_seed, int jobs) {
  std::vector<char> flags = percolation_union_flags(space, run, copies, target,
                                                    trials, master_seed, jobs);
  std::int64_t hits = 0;
  for (char f : flags) hits += f;
  return wilson_interval(hits, trials);
}

std::int64_t correlation_profile(const LimsupModel& model, double eps, int n) {
  if (n < 1 || n > model.depth())
    throw std::invalid_argument("level out of range");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  switch (model.dependence()) {
    case LimsupModel::Dependence::Independent:
      return 1;  // only Q itself correlates with Q
    case LimsupModel::Dependence::SiblingCoupled: {
      // Paired siblings share one Bernoulli variable: Cov = P(1-P), so
      // the normalized correlation Cov/P^2 equals (1-P)/P.
      double p =
          std::pow(static_cast<double>(model.space().base()),
                   -model.max_exponent(n) * n);
      double ratio = (1.0 - p) / p;
      return ratio >= eps ? 2 : 1;
    }
  }
  throw unsupported_model_error("unknown dependence kind");
}

}  // namespace covfrac
