#include "covfrac/targets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covfrac {

TargetSet::TargetSet(const DigitSpace& space,
                     std::vector<std::vector<Digit>> profile)
    : space_(&space), profile_(std::move(profile)) {
  if (profile_.empty()) throw std::invalid_argument("empty level profile");
  for (auto& level : profile_) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
    if (level.empty()) throw std::invalid_argument("empty level alphabet");
    for (Digit d : level)
      if (!space.digit_allowed(d))
        throw std::invalid_argument("target digit outside space alphabet");
  }
}

TargetSet TargetSet::whole_space(const DigitSpace& space) {
  return TargetSet(space, {space.alphabet()});
}

const std::vector<Digit>& TargetSet::allowed(int level) const {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  return profile_[(level - 1) % profile_.size()];
}

bool TargetSet::cube_meets(const Cube& cube) const {
  for (int i = 0; i < cube.level; ++i) {
    const auto& a = allowed(i + 1);
    if (!std::binary_search(a.begin(), a.end(), cube.prefix[i])) return false;
  }
  return true;
}

BigInt TargetSet::cube_count(int k) const {
  BigInt n = 1;
  for (int j = 1; j <= k; ++j) n *= allowed(j).size();
  return n;
}

std::vector<Cube> TargetSet::cubes_at_level(int k) const {
  space_->check_depth(k);
  std::vector<Cube> out{Cube{0, {}}};
  for (int level = 1; level <= k; ++level) {
    std::vector<Cube> next;
    for (const Cube& c : out)
      for (Digit d : allowed(level)) {
        Cube ch{level, c.prefix};
        ch.prefix.push_back(d);
        next.push_back(std::move(ch));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<Cube> TargetSet::cubes_meeting_ball(int k, const Ball& ball) const {
  space_->check_depth(k);
  std::vector<Cube> hits;
  std::vector<Cube> frontier{Cube{0, {}}};
  // pruned descent restricted to G's subtree
  for (int level = 0; level <= k; ++level) {
    std::vector<Cube> next;
    for (const Cube& c : frontier) {
      if (ball_cube_relation(*space_, ball, c) == BallCubeRelation::Disjoint)
        continue;
      if (level == k) {
        hits.push_back(c);
        continue;
      }
      for (Digit d : allowed(level + 1)) {
        Cube ch{level + 1, c.prefix};
        ch.prefix.push_back(d);
        next.push_back(std::move(ch));
      }
    }
    frontier = std::move(next);
  }
  return hits;
}

double TargetSet::dim_lower_proxy(int depth) const {
  double log_m = std::log(space_->base());
  double acc = 0, best = 1e300;
  for (int j = 1; j <= depth; ++j) {
    acc += std::log(static_cast<double>(allowed(j).size()));
    best = std::min(best, acc / (j * log_m));
  }
  return best;
}

double TargetSet::dim_upper_proxy(int depth) const {
  double log_m = std::log(space_->base());
  double acc = 0, best = 0;
  for (int j = 1; j <= depth; ++j) {
    acc += std::log(static_cast<double>(allowed(j).size()));
    best = std::max(best, acc / (j * log_m));
  }
  return best;
}

}  // namespace covfrac
