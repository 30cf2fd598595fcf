// End-to-end acceptance suite: one PASS/FAIL line per criterion, exit
// status = number of failures. Statistical tolerances are pinned here
// and must not be loosened to make a run pass.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "covfrac/covering.hpp"
#include "covfrac/estimator.hpp"
#include "covfrac/limsup.hpp"
#include "covfrac/runner.hpp"

using namespace covfrac;

namespace {

int g_failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s %s — %s\n", name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// --- A1: exact nesting reports and cardinality bracketing ---------------

void a1() {
  bool pass = true;
  std::ostringstream detail;
  for (auto [m, alphabet] : {std::pair<int, std::vector<Digit>>{2, {0, 1}},
                             {3, {0, 2}},
                             {5, {0, 1, 3}}}) {
    DigitSpace space(m, alphabet, 10);
    NestingReport rep = nesting_family_report(space, 8);
    if (!rep.pass) {
      pass = false;
      detail << "base " << m << ": " << rep.failure << "; ";
      continue;
    }
    double s = space.dim(), c1 = space.regularity_constant();
    double r_in = to_double(rep.inner_radius_factor);
    double r_out = to_double(rep.outer_radius_factor);
    double count = 1;
    for (int k = 1; k <= 8; ++k) {
      count *= alphabet.size();
      double scale = std::pow(double(m), k * s);
      bool ok = scale * std::pow(r_out, -s) / c1 <= count &&
                count <= c1 * std::pow(r_in, -s) * scale;
      if (!ok) {
        pass = false;
        detail << "base " << m << " k=" << k << " outside bracket; ";
      }
    }
  }
  if (pass) detail << "3 spaces nested exactly to k=8, cardinality bracketed";
  report("A1", pass, detail.str());
}

// --- A2: BT index recovery and condition (C) ----------------------------

void a2() {
  bool pass = true;
  std::ostringstream detail;
  for (double a : {0.2, 0.4, 0.6}) {
    std::ostringstream text;
    text << a;
    RadiusSequence seq{PowerLaw{parse_decimal(text.str()), 2, 45}};
    BlockTable table = block_counts(seq, Rat(1, 2), 40);
    double est = bt_index_estimate(table, 20);
    bool within = std::abs(est - a) <= 0.03;
    ConditionCResult cc = condition_c_check(table, a, 0.1);
    if (!within || !cc.holds_on_prefix) pass = false;
    detail << "alpha0=" << a << "->" << fmt(est)
           << (cc.holds_on_prefix ? "(C)" : "(!C)") << " ";
  }
  BlockProfile gaps;
  gaps.base = 2;
  for (int k = 1; k <= 40; ++k) gaps.counts[k] = 1;
  for (int k : {2, 4, 8, 16, 32})
    gaps.counts[k] = static_cast<std::int64_t>(std::pow(2.0, 0.5 * k));
  BlockTable bad = block_counts(RadiusSequence{gaps}, Rat(1, 2), 40);
  bool rejected = !condition_c_check(bad, 0.5, 0.1).holds_on_prefix;
  if (!rejected) pass = false;
  detail << (rejected ? "geometric gaps rejected" : "geometric gaps ACCEPTED");
  report("A2", pass, detail.str());
}

// --- shared covering harness -------------------------------------------

struct CoverResult {
  bool hit = false;
  std::vector<LevelCount> matched;
};

std::vector<CoverResult> cover_trials(const DigitSpace& space,
                                      const RadiusSequence& seq,
                                      const BlockTable& table,
                                      const TargetSet& target, int K,
                                      int k_min, int m0, std::int64_t trials,
                                      std::uint64_t seed, bool want_counts) {
  return run_trials(trials, seed, 0,
                    [&](std::int64_t, std::uint64_t s) -> CoverResult {
                      OrbitSource src(space, s);
                      CoverTrace trace =
                          simulate_cover(space, table, seq, src, K);
                      CoverResult r;
                      r.hit = hit_target(trace, target, k_min, K);
                      if (want_counts)
                        r.matched = matched_cube_counts(trace, target, m0);
                      return r;
                    });
}

double mean_count_slope(const std::vector<CoverResult>& rows, int base, int K,
                        int k_lo, int k_hi) {
  std::vector<CountRow> counts(K);
  for (int k = 1; k <= K; ++k) counts[k - 1].k = k;
  for (const CoverResult& r : rows)
    for (const LevelCount& lc : r.matched)
      counts[lc.k - 1].count +=
          static_cast<double>(lc.count) / static_cast<double>(rows.size());
  return box_dimension(counts, base, k_lo, k_hi).slope;
}

void a3() {
  DigitSpace space(3, {0, 1, 2}, 16);
  TargetSet cantor(space, {{0, 2}});
  RadiusSequence seq{PowerLaw{parse_decimal("0.2"), 3, 16}};
  BlockTable table = block_counts(seq, Rat(1, 3), 14);
  sparse_indices(table, 0.2);
  auto rows = cover_trials(space, seq, table, cantor, 14, 3, 4, 100, 42, false);
  std::int64_t hits = 0;
  for (const CoverResult& r : rows) hits += r.hit;
  double freq = hits / 100.0;
  report("A3", freq <= 0.05,
         "empty regime (s-alpha=0.8 > dim_P G): hit frequency " + fmt(freq) +
             " <= 0.05");
}

void a4() {
  DigitSpace space(3, {0, 1, 2}, 16);
  TargetSet cantor(space, {{0, 2}});
  RadiusSequence seq{PowerLaw{parse_decimal("0.6"), 3, 16}};
  BlockTable table = block_counts(seq, Rat(1, 3), 12);
  sparse_indices(table, 0.1);
  // tail window [8, 12]: blocks below 8 are pre-asymptotic (fewer than
  // ~50 indices) and the theory only promises probability 1 in the limit
  auto rows = cover_trials(space, seq, table, cantor, 12, 8, 4, 100, 42, false);
  std::int64_t hits = 0;
  for (const CoverResult& r : rows) hits += r.hit;
  double freq = hits / 100.0;
  report("A4", freq >= 0.90,
         "full-hit regime (dim_H G > s-alpha): hit frequency " + fmt(freq) +
             " >= 0.90");
}

void a5() {
  DigitSpace space(3, {0, 1, 2}, 16);
  TargetSet cantor(space, {{0, 2}});
  RadiusSequence seq{PowerLaw{parse_decimal("0.6"), 3, 16}};
  BlockTable table = block_counts(seq, Rat(1, 3), 12);
  sparse_indices(table, 0.05);
  auto rows = cover_trials(space, seq, table, cantor, 12, 3, 4, 100, 42, true);
  double slope = mean_count_slope(rows, 3, 12, 6, 12);
  double target = 0.6309 + 0.6 - 1.0;
  report("A5", std::abs(slope - target) <= 0.08,
         "intersection dimension: slope " + fmt(slope) + " within 0.08 of " +
             fmt(target));
}

void a6() {
  DigitSpace space(3, {0, 2}, 16);
  TargetSet whole = TargetSet::whole_space(space);
  RadiusSequence seq{PowerLaw{parse_decimal("0.4"), 3, 16}};
  BlockTable table = block_counts(seq, Rat(1, 3), 14);
  sparse_indices(table, 0.05);
  auto rows = cover_trials(space, seq, table, whole, 14, 3, 4, 100, 42, true);
  double slope = mean_count_slope(rows, 3, 14, 5, 13);
  report("A6", std::abs(slope - 0.4) <= 0.07,
         "baseline dim E(x) = alpha: slope " + fmt(slope) +
             " within 0.07 of 0.4");
}

void a7() {
  DigitSpace space(2, {0, 1});
  TargetSet whole = TargetSet::whole_space(space);
  PercolationRun sub{PercolationRun::p_from_bit_exponent(1.3), 16};
  double f_sub =
      percolation_union_hits(space, sub, 1, whole, 100, 42).frequency;
  PercolationRun super{PercolationRun::p_from_bit_exponent(0.5), 16};
  double f_super =
      percolation_union_hits(space, super, 32, whole, 100, 42).frequency;
  report("A7", f_sub <= 0.05 && f_super >= 0.95,
         "percolation dichotomy: t=1.3 -> " + fmt(f_sub) +
             " <= 0.05, t=0.5 x32 -> " + fmt(f_super) + " >= 0.95");
}

void a8() {
  DigitSpace space(2, {0, 1});
  LimsupModel model = LimsupModel::constant_field(space, 16, 0.3);
  const int trials = 100;
  std::vector<CountRow> rows(16);
  for (int n = 1; n <= 16; ++n) rows[n - 1].k = n;
  for (int t = 0; t < trials; ++t) {
    auto counts = sample_limsup_level_counts(model, derive_seed(42, t));
    for (int n = 0; n < 16; ++n)
      rows[n].count += static_cast<double>(counts[n]) / trials;
  }
  auto [lo, hi] = default_window(1, 16);
  double slope = box_dimension(rows, 2, lo, hi).slope;
  report("A8", slope >= 0.62 && slope <= 0.78,
         "limsup fractal dimension: slope " + fmt(slope) + " in [0.62, 0.78]");
}

void a9() {
#ifndef COVFRAC_CLI_PATH
  report("A9", false, "CLI binary path not configured");
#else
  namespace fs = std::filesystem;
  fs::path base = fs::temp_directory_path() / "covfrac_a9";
  fs::create_directories(base);
  fs::path cfg = base / "config.json";
  std::ofstream(cfg)
      << R"({"kind":"hit-prob","space":{"base":3},)"
      << R"("sequence":{"kind":"power-law","alpha0":"0.6"},)"
      << R"("target":{"profile":[[0,2]]},"depth":8,"trials":20,)"
      << R"("seed":7,"alpha":0.6,"gap_constant":0.2,"k_min":3})" << "\n";
  auto run = [&](const char* out, int jobs) {
    std::ostringstream cmd;
    cmd << COVFRAC_CLI_PATH << " --config " << cfg.string() << " --jobs "
        << jobs << " --out " << (base / out).string();
    return std::system(cmd.str().c_str());
  };
  auto slurp = [&](const char* out) {
    std::ifstream in(base / out / "trials.csv", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool pass = run("r1", 1) == 0 && run("r2", 2) == 0 && run("r3", 1) == 0;
  std::string c1 = slurp("r1"), c2 = slurp("r2"), c3 = slurp("r3");
  pass = pass && !c1.empty() && c1 == c2 && c1 == c3;
  report("A9", pass,
         pass ? "per-trial CSV byte-identical across reruns and --jobs 1/2"
              : "CSV outputs differ across runs or jobs settings");
#endif
}

void a10() {
  DigitSpace space(3, {0, 2});
  std::mt19937_64 rng(4242);
  bool pass = true;
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 1 + static_cast<int>(rng() % 8);
    auto cubes = cubes_at_level(space, k);
    Ball ball{Rat(std::int64_t(rng() % 4375) - 1094, 2187),
              Rat(1 + std::int64_t(rng() % 2187), 2187)};
    std::size_t brute = 0;
    for (const Cube& cube : cubes) {
      Rat lo = cube.left(space), hi = cube.right(space);
      BallCubeRelation expect =
          (ball.hi() < lo || hi < ball.lo())
              ? BallCubeRelation::Disjoint
              : ((ball.lo() <= lo && hi <= ball.hi())
                     ? BallCubeRelation::BallContainsCube
                     : BallCubeRelation::Intersects);
      if (ball_cube_relation(space, ball, cube) != expect) pass = false;
      if (expect != BallCubeRelation::Disjoint) ++brute;
    }
    if (count_cubes_meeting_ball(space, k, ball) != brute) pass = false;
    ++checked;
  }
  report("A10", pass,
         std::to_string(checked) +
             " randomized instances agree with exhaustive oracles");
}

}  // namespace

int main() {
  a1();
  a2();
  a3();
  a4();
  a5();
  a6();
  a7();
  a8();
  a9();
  a10();
  if (g_failures == 0) std::printf("acceptance: all criteria passed\n");
  return g_failures;
}
