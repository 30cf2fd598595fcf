#pragma once

#include <vector>

#include "covfrac/space.hpp"

namespace covfrac {

// Analytic target G encoded as a level-indexed digit-restriction tree:
// a point is in G iff its digit at each level j lies in allowed(j). The
// per-level alphabets repeat cyclically past the given profile.
class TargetSet {
 public:
  // profile must be nonempty; each entry a nonempty subset of the space
  // alphabet.
  TargetSet(const DigitSpace& space, std::vector<std::vector<Digit>> profile);

  static TargetSet whole_space(const DigitSpace& space);

  const DigitSpace& space() const { return *space_; }
  const std::vector<Digit>& allowed(int level) const;  // level >= 1

  bool cube_meets(const Cube& cube) const;

  // N_k(G) = prod_{j<=k} |allowed(j)|, the number of level-k cubes of G.
  BigInt cube_count(int k) const;

  // All level-k cubes meeting G (lexicographic order).
  std::vector<Cube> cubes_at_level(int k) const;

  // Level-k cubes of G meeting the ball, by pruned descent.
  std::vector<Cube> cubes_meeting_ball(int k, const Ball& ball) const;

  // Cesaro-exponent proxies of dim_H (liminf side) and dim_P (limsup
  // side) over levels 1..depth.
  double dim_lower_proxy(int depth) const;
  double dim_upper_proxy(int depth) const;

 private:
  const DigitSpace* space_;
  std::vector<std::vector<Digit>> profile_;
};

}  // namespace covfrac
