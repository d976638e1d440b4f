#pragma once

#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dualfilt {

/// Number of worker threads actually used for a request. 0 means "machine
/// parallelism".
inline int effective_threads(int requested) {
#ifdef _OPENMP
  if (requested <= 0) return omp_get_max_threads();
  return requested;
#else
  (void)requested;
  return 1;
#endif
}

/// Serial reference loop. Kept alongside the parallel kernel so tests and the
/// benchmark can compare the two; results must be bit-identical because every
/// iteration writes only to its own index.
template <class Body>
void serial_for_index(int n, Body&& body) {
  for (int i = 0; i < n; ++i) body(i);
}

/// OpenMP loop over independent indices. Exceptions thrown by the body are
/// captured and rethrown on the calling thread (first one wins).
template <class Body>
void parallel_for_index(int n, int threads, Body&& body) {
#ifdef _OPENMP
  const int nt = effective_threads(threads);
  if (nt <= 1) {
    serial_for_index(n, std::forward<Body>(body));
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(static) num_threads(nt)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  (void)threads;
  serial_for_index(n, std::forward<Body>(body));
#endif
}

}  // namespace dualfilt
