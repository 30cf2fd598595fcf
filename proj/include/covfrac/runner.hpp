#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "covfrac/process.hpp"

namespace covfrac {

// Deterministic trial fan-out: trial i always runs with seed
// derive_seed(master, i) and results land at index i, so the output is
// identical for any worker count.
//
// run_trials_serial is the reference implementation kept for testing the
// OpenMP kernel against; see tools/bench.cpp for the comparison.

template <typename Fn>
auto run_trials_serial(std::int64_t trials, std::uint64_t master_seed, Fn fn)
    -> std::vector<decltype(fn(std::int64_t{}, std::uint64_t{}))> {
  std::vector<decltype(fn(std::int64_t{}, std::uint64_t{}))> out(trials);
  for (std::int64_t i = 0; i < trials; ++i)
    out[i] = fn(i, derive_seed(master_seed, i));
  return out;
}

template <typename Fn>
auto run_trials(std::int64_t trials, std::uint64_t master_seed, int jobs,
                Fn fn)
    -> std::vector<decltype(fn(std::int64_t{}, std::uint64_t{}))> {
  if (jobs == 1) return run_trials_serial(trials, master_seed, fn);
  std::vector<decltype(fn(std::int64_t{}, std::uint64_t{}))> out(trials);
#ifdef _OPENMP
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (std::int64_t i = 0; i < trials; ++i)
    out[i] = fn(i, derive_seed(master_seed, i));
  return out;
}

}  // namespace covfrac
