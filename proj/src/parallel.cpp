#include "hdtest/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace hdtest {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  int threads = omp_get_max_threads();
  if (const char* cap = std::getenv("HDTEST_THREADS")) {
    try {
      const int limit = std::stoi(cap);
      if (limit > 0) threads = std::min(threads, limit);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(threads, 1);
}

}  // namespace hdtest
