#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covfrac/estimator.hpp"
#include "covfrac/targets.hpp"

using namespace covfrac;

namespace {

std::vector<CountRow> geometric_counts(int base_pow, int k_max, double c) {
  std::vector<CountRow> rows;
  for (int k = 1; k <= k_max; ++k)
    rows.push_back({k, c * std::pow(2.0, base_pow * k)});
  return rows;
}

}  // namespace

TEST_CASE("doubling counts in base 2 have slope one") {
  DimEstimate est = box_dimension(geometric_counts(1, 12, 1.0), 2, 1, 12);
  CHECK(est.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling counts in base 3 have slope log 2 over log 3") {
  DimEstimate est = box_dimension(geometric_counts(1, 12, 1.0), 3, 1, 12);
  CHECK(est.slope ==
        doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("a constant factor moves the intercept only") {
  DimEstimate a = box_dimension(geometric_counts(1, 12, 1.0), 2, 2, 11);
  DimEstimate b = box_dimension(geometric_counts(1, 12, 64.0), 2, 2, 11);
  CHECK(std::abs(a.slope - b.slope) < 1e-12);
  CHECK(b.intercept - a.intercept == doctest::Approx(std::log(64.0)));
}

TEST_CASE("synthetic power counts recover the exponent exactly") {
  for (double d : {0.25, 0.5, 0.75}) {
    std::vector<CountRow> rows;
    for (int k = 1; k <= 14; ++k)
      rows.push_back({k, 3.7 * std::pow(3.0, d * k)});
    DimEstimate est = box_dimension(rows, 3, 3, 13);
    CHECK(std::abs(est.slope - d) < 1e-9);
  }
}

TEST_CASE("a level-varying Moran target matches its average exponent") {
  DigitSpace space(5, {0, 1, 2, 3}, 10);
  TargetSet g(space, {{0, 1}, {0, 1}, {0, 1, 2, 3}});
  std::vector<CountRow> rows;
  for (int k = 1; k <= 10; ++k)
    rows.push_back({k, g.cube_count(k).convert_to<double>()});
  DimEstimate est = box_dimension(rows, 5, 4, 10);
  double analytic = std::log(16.0) / (3 * std::log(5.0));
  CHECK(std::abs(est.slope - analytic) < 0.02);
}

TEST_CASE("degenerate windows are rejected") {
  auto rows = geometric_counts(1, 12, 1.0);
  CHECK_THROWS_AS(box_dimension(rows, 2, 3, 6), insufficient_data_error);
  std::vector<CountRow> sparse{{1, 2}, {2, 4}, {3, 8}, {9, 512}};
  CHECK_THROWS_AS(box_dimension(sparse, 2, 1, 9), insufficient_data_error);
}

TEST_CASE("default window trims three coarse levels and one fine level") {
  auto [lo, hi] = default_window(1, 16);
  CHECK(lo == 4);
  CHECK(hi == 15);
}

TEST_CASE("prediction regimes across the dichotomy") {
  // thin target: below the critical line
  Prediction empty = predict(1.0, 0.2, 0.6309, 0.6309);
  CHECK(empty.regime == Regime::Empty);
  CHECK(empty.dim_lower == kNegInf);

  // fat equal-dimension target: exact formula
  Prediction exact = predict(1.0, 0.6, 0.6309, 0.6309);
  CHECK(exact.regime == Regime::Exact);
  CHECK(exact.dim_lower == doctest::Approx(0.2309));
  CHECK(exact.dim_upper == doctest::Approx(0.2309));

  // the whole Cantor space as its own target
  double s = std::log(2.0) / std::log(3.0);
  Prediction self = predict(s, 0.4, s, s);
  CHECK(self.regime == Regime::Exact);
  CHECK(self.dim_lower == doctest::Approx(0.4));

  // straddling the critical line
  Prediction crit = predict(1.0, 0.4, 0.5, 0.7);
  CHECK(crit.regime == Regime::IndeterminateCritical);

  // distinct Hausdorff and packing dims give bounds only
  Prediction bounds = predict(1.0, 0.5, 0.6, 0.8);
  CHECK(bounds.regime == Regime::Bounds);
  CHECK(bounds.dim_lower == doctest::Approx(0.1));
  CHECK(bounds.dim_upper == doctest::Approx(0.3));
  CHECK(bounds.dim_packing == doctest::Approx(0.8));
}

TEST_CASE("empty targets predict the empty regime") {
  Prediction p = predict(1.0, 0.5, kNegInf, kNegInf);
  CHECK(p.regime == Regime::Empty);
}

TEST_CASE("prediction monotonicity in the target dimension and index") {
  double prev = -1e301;
  for (double dimH : {0.55, 0.65, 0.75}) {
    Prediction p = predict(1.0, 0.5, dimH, 0.8);
    CHECK(p.dim_lower >= prev);
    prev = p.dim_lower;
  }
  Prediction base = predict(1.0, 0.5, 0.7, 0.7);
  Prediction shifted = predict(1.0, 0.6, 0.7, 0.7);
  CHECK(shifted.dim_lower - base.dim_lower == doctest::Approx(0.1));
}

TEST_CASE("indices at or above the space dimension are out of theory") {
  CHECK_THROWS_AS(predict(0.6309, 0.7, 0.5, 0.5), out_of_theory_error);
  CHECK_THROWS_AS(predict(1.0, 0.0, 0.5, 0.5), out_of_theory_error);
}

TEST_CASE("wilson intervals at the boundary and the midpoint") {
  std::vector<bool> yes(100, true);
  HitFrequency all = hit_probability(yes);
  CHECK(all.frequency == 1.0);
  CHECK(all.ci_low >= 0.96);

  std::vector<bool> no(100, false);
  HitFrequency none = hit_probability(no);
  CHECK(none.frequency == 0.0);
  CHECK(none.ci_high <= 0.04);

  std::vector<bool> half(100, false);
  for (int i = 0; i < 50; ++i) half[i] = true;
  HitFrequency mid = hit_probability(half);
  CHECK(mid.ci_low == doctest::Approx(0.4038).epsilon(0.01));
  CHECK(mid.ci_high == doctest::Approx(0.5962).epsilon(0.01));

  CHECK_THROWS_AS(hit_probability(std::vector<bool>(10, true)),
                  insufficient_data_error);
}
