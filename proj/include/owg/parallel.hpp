#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace owg {

// OpenMP-backed parallel loop over [0, n); falls back to a plain loop when
// built without OpenMP. Bodies must be independent across iterations.
template <typename F>
void parallel_for(long long n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) body(i);
#else
    for (long long i = 0; i < n; ++i) body(i);
#endif
}

// Serial twin kept so tests and the benchmark can compare against the
// parallel path.
template <typename F>
void serial_for(long long n, F&& body) {
    for (long long i = 0; i < n; ++i) body(i);
}

inline int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace owg
