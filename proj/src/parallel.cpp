#include "sas/parallel.hpp"

#include <cstdlib>
#include <string>

namespace sas::par {

int max_threads() {
  static const int cached = [] {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("SAS_WITNESS_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap >= 1 && cap < n) n = cap;
      } catch (...) {
        // ignore malformed values, keep the OpenMP default
      }
    }
    return n < 1 ? 1 : n;
  }();
  return cached;
}

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  // splitmix64 over seed xor a spread-out index
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace sas::par
