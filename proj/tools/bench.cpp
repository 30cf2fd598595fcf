// Compares the OpenMP trial fan-out against the serial reference on the
// covering simulation, and checks they produce identical results.

#include <chrono>
#include <cstdio>

#include "covfrac/covering.hpp"
#include "covfrac/runner.hpp"

using namespace covfrac;

namespace {

struct Workload {
  DigitSpace space{3, {0, 1, 2}};
  RadiusSequence seq{PowerLaw{parse_decimal("0.6"), 3, 16}};
  BlockTable table;
  int K = 12;

  Workload() {
    table = block_counts(seq, Rat(1, 3), K);
    sparse_indices(table, 0.2);
  }

  std::int64_t trial(std::uint64_t seed) const {
    OrbitSource src(space, seed);
    CoverTrace trace = simulate_cover(space, table, seq, src, K);
    std::int64_t total = 0;
    for (const BlockRecord& rec : trace.blocks)
      total += static_cast<std::int64_t>(rec.intersect_hits.size());
    return total;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main() {
  Workload w;
  const std::int64_t trials = 64;
  const std::uint64_t seed = 20240915;
  auto fn = [&](std::int64_t, std::uint64_t s) { return w.trial(s); };

  auto t0 = std::chrono::steady_clock::now();
  auto serial = run_trials_serial(trials, seed, fn);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto parallel = run_trials(trials, seed, 0, fn);
  double t_parallel = seconds_since(t0);

  if (serial != parallel) {
    std::printf("MISMATCH: parallel results differ from serial reference\n");
    return 1;
  }
  std::printf("trials=%lld  serial=%.3fs  parallel=%.3fs  speedup=%.2fx\n",
              static_cast<long long>(trials), t_serial, t_parallel,
              t_serial / t_parallel);
  return 0;
}
