#include "covfrac/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace covfrac {

Rat parse_decimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  BigInt den = ipow(BigInt(10), static_cast<unsigned>(text.size() - dot - 1));
  return Rat(BigInt(digits), den);
}

static int default_depth_cap(int base) {
  if (base == 2) return 24;
  if (base == 3) return 16;
  return std::max(8, static_cast<int>(24.0 / std::log2(base)));
}

DigitSpace::DigitSpace(int base, std::vector<Digit> alphabet,
                       std::optional<int> depth_cap)
    : base_(base), alphabet_(std::move(alphabet)) {
  if (base_ < 2) throw std::invalid_argument("base must be >= 2");
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()),
                  alphabet_.end());
  if (alphabet_.size() < 2)
    throw std::invalid_argument("alphabet needs at least 2 digits");
  if (alphabet_.back() >= base_)
    throw std::invalid_argument("digit out of range for base");
  depth_cap_ = depth_cap.value_or(default_depth_cap(base_));
  dim_ = std::log(static_cast<double>(alphabet_.size())) / std::log(base_);
  c1_ = std::max(std::pow(base_, dim_), 2.0 * base_ + 2.0);
}

bool DigitSpace::digit_allowed(Digit d) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), d);
}

Rat DigitSpace::cylinder_measure(int level) const {
  return Rat(BigInt(1), ipow(BigInt(alphabet_size()), level));
}

void DigitSpace::check_depth(int level) const {
  if (level > depth_cap_)
    throw depth_cap_error("level " + std::to_string(level) +
                          " exceeds depth cap " + std::to_string(depth_cap_));
}

Point Point::from_digits(const DigitSpace& space, Prefix digits) {
  Point p;
  Rat v = 0;
  Rat scale = 1;
  for (Digit d : digits) {
    scale /= space.base();
    v += scale * d;
  }
  p.digits = std::move(digits);
  p.value = v;
  return p;
}

Rat Cube::left(const DigitSpace& space) const {
  Rat v = 0;
  Rat scale = 1;
  for (Digit d : prefix) {
    scale /= space.base();
    v += scale * d;
  }
  return v;
}

Rat Cube::width(const DigitSpace& space) const {
  return pow_rat(space.base(), -level);
}

Rat Cube::midpoint(const DigitSpace& space) const {
  return left(space) + width(space) / 2;
}

std::vector<Cube> Cube::children(const DigitSpace& space) const {
  std::vector<Cube> out;
  out.reserve(space.alphabet_size());
  for (Digit d : space.alphabet()) {
    Cube c{level + 1, prefix};
    c.prefix.push_back(d);
    out.push_back(std::move(c));
  }
  return out;
}

const char* to_string(BallCubeRelation r) {
  switch (r) {
    case BallCubeRelation::Disjoint: return "Disjoint";
    case BallCubeRelation::Intersects: return "Intersects";
    case BallCubeRelation::BallContainsCube: return "BallContainsCube";
  }
  return "?";
}

BallCubeRelation ball_cube_relation(const DigitSpace& space, const Ball& ball,
                                    const Cube& cube) {
  if (ball.radius <= 0) throw std::invalid_argument("radius must be > 0");
  Rat v = cube.left(space);
  Rat w = cube.width(space);
  if (ball.hi() < v || v + w < ball.lo()) return BallCubeRelation::Disjoint;
  if (ball.lo() <= v && v + w <= ball.hi())
    return BallCubeRelation::BallContainsCube;
  return BallCubeRelation::Intersects;
}

std::vector<Cube> cubes_at_level(const DigitSpace& space, int k) {
  space.check_depth(k);
  std::vector<Cube> out{Cube{0, {}}};
  for (int level = 0; level < k; ++level) {
    std::vector<Cube> next;
    next.reserve(out.size() * space.alphabet_size());
    for (const Cube& c : out)
      for (Cube& ch : c.children(space)) next.push_back(std::move(ch));
    out = std::move(next);
  }
  return out;
}

namespace {

std::int64_t floor_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
  return q.convert_to<std::int64_t>();
}

}  // namespace

BallScan::BallScan(const DigitSpace& space, const Ball& ball, int k_max) {
  if (ball.radius <= 0) throw std::invalid_argument("radius must be > 0");
  space.check_depth(k_max);
  ce_.resize(k_max + 1);
  fl_.resize(k_max + 1);
  ce2_.resize(k_max + 1);
  fl2_.resize(k_max + 1);
  Rat scale = 1;
  for (int j = 0; j <= k_max; ++j) {
    // integer A >= lo*m^j  <=>  A >= ceil(lo*m^j);  A <= hi*m^j  <=>
    // A <= floor(hi*m^j), which covers all the closed-interval predicates
    ce_[j] = ceil_rat(ball.lo() * scale);
    fl_[j] = floor_rat(ball.hi() * scale);
    ce2_[j] = ceil_rat(ball.lo() * scale * 2);
    fl2_[j] = floor_rat(ball.hi() * scale * 2);
    scale *= space.base();
  }
}

static void descend(const DigitSpace& space, const Prefix& prefix,
                    std::int64_t a, int level, int k, const BallScan& scan,
                    std::vector<Cube>& hits, std::size_t* visited) {
  if (visited) ++*visited;
  if (scan.disjoint(level, a)) return;
  if (level == k) {
    hits.push_back(Cube{k, prefix});
    return;
  }
  for (Digit d : space.alphabet()) {
    Prefix child = prefix;
    child.push_back(d);
    descend(space, child, a * space.base() + d, level + 1, k, scan, hits,
            visited);
  }
}

std::vector<Cube> cubes_meeting_ball(const DigitSpace& space, int k,
                                     const Ball& ball, std::size_t* visited) {
  space.check_depth(k);
  BallScan scan(space, ball, k);
  std::vector<Cube> hits;
  descend(space, {}, 0, 0, k, scan, hits, visited);
  return hits;
}

std::size_t count_cubes_meeting_ball(const DigitSpace& space, int k,
                                     const Ball& ball) {
  return cubes_meeting_ball(space, k, ball).size();
}

double cube_intersection_bound(const DigitSpace& space, double a0) {
  double c1 = space.regularity_constant();
  double s = space.dim();
  double r_in = 0.5, r_out = 1.0;
  return c1 * c1 * std::pow(2.0 * r_out + a0, s) / std::pow(r_in, s);
}

std::string prefix_to_string(const Prefix& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << '.';
    os << static_cast<int>(p[i]);
  }
  return os.str();
}

NestingReport verify_nesting_family(
    const DigitSpace& space, const std::vector<std::vector<Cube>>& levels) {
  NestingReport rep;
  rep.k_max = static_cast<int>(levels.size()) - 1;
  rep.inner_radius_factor = Rat(1, 2);
  rep.outer_radius_factor = Rat(1);

  auto fail = [&](int k, const Cube& c, const std::string& what) {
    rep.pass = false;
    rep.failure = "level " + std::to_string(k) + " prefix [" +
                  prefix_to_string(c.prefix) + "]: " + what;
    return rep;
  };

  BigInt expected = 1;
  for (int k = 0; k < static_cast<int>(levels.size()); ++k) {
    const auto& cubes = levels[k];
    // (1) partition: |D|^k cubes, in order, tiling the parent's segments
    // with overlap only at endpoints.
    if (BigInt(cubes.size()) != expected)
      return fail(k, Cube{k, {}}, "cardinality != |D|^k");
    Rat w = pow_rat(space.base(), -k);
    for (std::size_t i = 0; i + 1 < cubes.size(); ++i) {
      if (cubes[i + 1].left(space) < cubes[i].left(space) + w)
        return fail(k, cubes[i], "interval overlap beyond endpoint");
    }
    // (2) nesting: each cube lies in exactly one cube one level up.
    if (k > 0) {
      const auto& parents = levels[k - 1];
      Rat pw = pow_rat(space.base(), -(k - 1));
      for (const Cube& c : cubes) {
        int count = 0;
        Rat lo = c.left(space), hi = lo + w;
        for (const Cube& p : parents) {
          Rat pl = p.left(space);
          if (pl <= lo && hi <= pl + pw) ++count;
        }
        if (count != 1) return fail(k, c, "not nested in exactly one parent");
      }
    }
    // (3) inner/outer ball control: open ball of radius (1/2) m^{-k} about
    // the midpoint stays inside; the ball of radius m^{-k} about the left
    // endpoint covers the cube.
    for (const Cube& c : cubes) {
      Rat lo = c.left(space), hi = lo + w, mid = lo + w / 2;
      Rat r_in = w * rep.inner_radius_factor;
      if (!(mid - r_in >= lo && mid + r_in <= hi))
        return fail(k, c, "inner ball escapes cube");
      Rat r_out = w * rep.outer_radius_factor;
      if (!(lo - r_out <= lo && hi <= lo + r_out))
        return fail(k, c, "outer ball does not cover cube");
    }
    expected *= space.alphabet_size();
  }
  rep.pass = true;
  return rep;
}

NestingReport nesting_family_report(const DigitSpace& space, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  space.check_depth(k_max);
  std::vector<std::vector<Cube>> levels;
  levels.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) levels.push_back(cubes_at_level(space, k));
  return verify_nesting_family(space, levels);
}

}  // namespace covfrac
