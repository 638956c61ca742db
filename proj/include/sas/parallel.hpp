#ifndef SAS_PARALLEL_HPP
#define SAS_PARALLEL_HPP

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sas::par {

/// Worker count for parallel kernels: min(OpenMP max threads,
/// SAS_WITNESS_THREADS if set). Always >= 1.
int max_threads();

/// Deterministic per-index seed stream: results are independent of the
/// thread count because every index derives its own generator state.
uint64_t mix_seed(uint64_t seed, uint64_t index);

/// Static-schedule parallel loop over [0, n). Falls back to a serial loop
/// when `parallel` is false or OpenMP is unavailable.
template <typename F>
void parallel_for(long n, bool parallel, F&& body) {
#ifdef _OPENMP
  if (parallel && max_threads() > 1) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  (void)parallel;
  for (long i = 0; i < n; ++i) body(i);
}

}  // namespace sas::par

#endif
