#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace covfrac {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat(std::int64_t num, std::int64_t den = 1) { return Rat(num, den); }

// m^e as an exact rational, e may be negative.
inline Rat pow_rat(std::int64_t m, int e) {
  BigInt p = 1;
  for (int i = 0; i < std::abs(e); ++i) p *= m;
  return e >= 0 ? Rat(p) : Rat(BigInt(1), p);
}

inline BigInt ipow(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Largest v >= 0 with v^p <= x.
inline BigInt iroot(const BigInt& x, unsigned p) {
  if (x <= 1 || p == 1) return x;
  BigInt lo = 0, hi = 1;
  while (ipow(hi, p) <= x) hi <<= 1;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (ipow(mid, p) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// Parse a non-negative decimal like "0.4" into an exact rational.
Rat parse_decimal(const std::string& text);

}  // namespace covfrac
