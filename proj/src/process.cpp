#include "covfrac/process.hpp"

#include <cmath>

namespace covfrac {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

OrbitSource::OrbitSource(const DigitSpace& space, std::uint64_t seed)
    : space_(&space), seed_(seed), rng_(seed) {}

Digit OrbitSource::stream_digit(std::int64_t i) {
  while (static_cast<std::int64_t>(stream_.size()) <= i) {
    std::uniform_int_distribution<int> pick(0, space_->alphabet_size() - 1);
    stream_.push_back(space_->alphabet()[pick(rng_)]);
  }
  return stream_[i];
}

Point OrbitSource::orbit_point(std::int64_t n, int depth) {
  if (n < 1) throw std::invalid_argument("orbit index must be >= 1");
  space_->check_depth(depth);
  Prefix digits(depth);
  for (int i = 0; i < depth; ++i) digits[i] = stream_digit(n - 1 + i);
  return Point::from_digits(*space_, std::move(digits));
}

namespace {

bool point_in_cube(const DigitSpace& space, const Point& p, const Cube& c) {
  if (static_cast<int>(p.digits.size()) < c.level)
    throw std::invalid_argument("point depth below cube level");
  for (int i = 0; i < c.level; ++i)
    if (p.digits[i] != c.prefix[i]) return false;
  return true;
}

}  // namespace

std::vector<MixingRow> mixing_diagnostic(const DigitSpace& space,
                                         std::uint64_t master_seed,
                                         const Cube& event_a,
                                         const Cube& event_d,
                                         const std::vector<int>& offsets,
                                         std::int64_t trials) {
  if (trials < 1000)
    throw std::invalid_argument("need at least 10^3 trials");
  double mu_a = to_double(space.cylinder_measure(event_a.level));
  int depth = std::max(event_a.level, event_d.level);
  std::vector<MixingRow> rows;
  for (int n : offsets) {
    std::int64_t cond = 0, joint = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
      OrbitSource src(space, derive_seed(master_seed, t));
      Point later = src.orbit_point(n + 1, depth);
      if (!point_in_cube(space, later, event_d)) continue;
      ++cond;
      Point first = src.orbit_point(1, depth);
      if (point_in_cube(space, first, event_a)) ++joint;
    }
    if (cond == 0)
      throw insufficient_samples_error(
          "conditioning event never occurred at offset " + std::to_string(n));
    double p_hat = static_cast<double>(joint) / cond;
    MixingRow row;
    row.offset = n;
    row.deviation = std::abs(p_hat - mu_a);
    row.sigma = std::sqrt(mu_a * (1 - mu_a) / cond);
    row.conditioned_trials = cond;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace covfrac
