#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "covfrac/rational.hpp"

namespace covfrac {

using Digit = std::uint8_t;
using Prefix = std::vector<Digit>;

struct depth_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Compact space of base-m digit sequences over a restricted alphabet,
// carrying the uniform Bernoulli measure (Ahlfors dim_s-regular).
class DigitSpace {
 public:
  DigitSpace(int base, std::vector<Digit> alphabet,
             std::optional<int> depth_cap = std::nullopt);

  int base() const { return base_; }
  const std::vector<Digit>& alphabet() const { return alphabet_; }
  int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
  int depth_cap() const { return depth_cap_; }

  // dim_s = log|D| / log m
  double dim() const { return dim_; }

  // Ahlfors regularity constant c_1 = max(m^s, 2m+2); measure of any ball
  // of radius r in (0,1] lies in [c_1^{-1} r^s, c_1 r^s].
  double regularity_constant() const { return c1_; }

  bool digit_allowed(Digit d) const;

  // Cylinder measure at level k: |D|^{-k}, exact.
  Rat cylinder_measure(int level) const;

  void check_depth(int level) const;

  bool operator==(const DigitSpace& o) const {
    return base_ == o.base_ && alphabet_ == o.alphabet_;
  }

 private:
  int base_;
  std::vector<Digit> alphabet_;
  int depth_cap_;
  double dim_;
  double c1_;
};

// A point of X truncated to finitely many digits; value is exact with
// denominator m^depth.
struct Point {
  Prefix digits;
  Rat value;  // sum d_i m^{-i}

  static Point from_digits(const DigitSpace& space, Prefix digits);
};

// Level-k cylinder [v, v + m^{-k}] intersected with X.
struct Cube {
  int level = 0;
  Prefix prefix;

  Rat left(const DigitSpace& space) const;
  Rat width(const DigitSpace& space) const;  // m^{-level}
  Rat right(const DigitSpace& space) const { return left(space) + width(space); }
  Rat midpoint(const DigitSpace& space) const;

  std::vector<Cube> children(const DigitSpace& space) const;

  bool operator==(const Cube& o) const {
    return level == o.level && prefix == o.prefix;
  }
};

struct Ball {
  Rat center;
  Rat radius;  // > 0

  Rat lo() const { return center - radius; }
  Rat hi() const { return center + radius; }
};

enum class BallCubeRelation { Disjoint, Intersects, BallContainsCube };

const char* to_string(BallCubeRelation r);

// Exact classification of the closed interval [center +/- radius] against
// the cube interval. Shared endpoints count as intersection.
BallCubeRelation ball_cube_relation(const DigitSpace& space, const Ball& ball,
                                    const Cube& cube);

// All |D|^k level-k cubes in lexicographic prefix order.
std::vector<Cube> cubes_at_level(const DigitSpace& space, int k);

// Precomputed per-level integer thresholds for one ball, so tree descents
// classify cubes with int64 comparisons only. A level-j cube is
// [A, A+1] m^{-j} where A is the integer value of its prefix.
class BallScan {
 public:
  BallScan(const DigitSpace& space, const Ball& ball, int k_max);

  bool disjoint(int level, std::int64_t a) const {
    return fl_[level] < a || a + 1 < ce_[level];
  }
  // ball interval contains the cube interval
  bool contains_cube(int level, std::int64_t a) const {
    return ce_[level] <= a && a + 1 <= fl_[level];
  }
  // ball interval contains the doubled cube interval [mid - w, mid + w]
  bool contains_double_cube(int level, std::int64_t a) const {
    return ce2_[level] <= 2 * a - 1 && 2 * a + 3 <= fl2_[level];
  }

 private:
  std::vector<std::int64_t> ce_, fl_, ce2_, fl2_;
};

// Level-k cubes meeting the ball, found by tree descent pruning disjoint
// subtrees. Never scans a full level.
std::vector<Cube> cubes_meeting_ball(const DigitSpace& space, int k,
                                     const Ball& ball,
                                     std::size_t* visited = nullptr);

std::size_t count_cubes_meeting_ball(const DigitSpace& space, int k,
                                     const Ball& ball);

// Lemma-style upper bound on how many level-k cubes a ball of radius
// a0 * m^{-k} can meet, instantiated with this space's constants.
double cube_intersection_bound(const DigitSpace& space, double a0);

struct NestingReport {
  bool pass = false;
  int k_max = 0;
  Rat inner_radius_factor;  // r_in, cube contains ball of radius r_in m^{-k}
  Rat outer_radius_factor;  // r_out, cube inside ball of radius r_out m^{-k}
  std::string failure;      // names level and prefix on violation
};

// Verifies, exactly, partition / nesting / inner-outer ball properties of
// the cylinder family up to k_max.
NestingReport nesting_family_report(const DigitSpace& space, int k_max);

// Same checks against an explicit cube list per level (lets tests corrupt
// the family).
NestingReport verify_nesting_family(
    const DigitSpace& space, const std::vector<std::vector<Cube>>& levels);

std::string prefix_to_string(const Prefix& p);

}  // namespace covfrac
