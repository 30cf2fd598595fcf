#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covfrac/covering.hpp"
#include "covfrac/runner.hpp"

using namespace covfrac;

namespace {

std::int64_t cover_payload(const DigitSpace& space, const BlockTable& table,
                           const RadiusSequence& seq, std::uint64_t seed) {
  OrbitSource src(space, seed);
  CoverTrace trace = simulate_cover(space, table, seq, src, table.K);
  std::int64_t acc = 0;
  for (const BlockRecord& rec : trace.blocks)
    acc = acc * 31 + static_cast<std::int64_t>(rec.intersect_hits.size()) * 7 +
          static_cast<std::int64_t>(rec.contain_hits.size());
  return acc;
}

}  // namespace

TEST_CASE("parallel fan-out equals the serial reference") {
  DigitSpace space(3, {0, 2});
  RadiusSequence seq{PowerLaw{parse_decimal("0.6"), 3, 16}};
  BlockTable table = block_counts(seq, Rat(1, 3), 8);
  sparse_indices(table, 0.3);
  auto fn = [&](std::int64_t, std::uint64_t s) {
    return cover_payload(space, table, seq, s);
  };
  auto serial = run_trials_serial(40, 4711, fn);
  for (int jobs : {0, 1, 2, 5}) {
    auto parallel = run_trials(40, 4711, jobs, fn);
    CHECK(parallel == serial);
  }
}

TEST_CASE("trial seeds depend on the index, not the schedule") {
  std::vector<std::uint64_t> seeds =
      run_trials(64, 99, 0, [](std::int64_t, std::uint64_t s) { return s; });
  for (std::int64_t i = 0; i < 64; ++i) CHECK(seeds[i] == derive_seed(99, i));
}

TEST_CASE("distinct master seeds give distinct trial streams") {
  auto a = run_trials(16, 1, 0, [](std::int64_t, std::uint64_t s) { return s; });
  auto b = run_trials(16, 2, 0, [](std::int64_t, std::uint64_t s) { return s; });
  int same = 0;
  for (int i = 0; i < 16; ++i) same += a[i] == b[i];
  CHECK(same == 0);
}
