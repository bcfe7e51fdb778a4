// Execution policy for data-parallel kernels.
//
// Every parallelizable loop in the library runs through parallel_for with an
// explicit Exec policy.  Exec::serial is the reference path; Exec::par fans the
// iteration space out over OpenMP threads with a static schedule.  Loop bodies
// must write disjoint slots only, so serial and parallel execution produce
// bit-identical results and any reduction happens afterwards in index order.

#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcap {

enum class Exec { serial, par };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

template <class F>
void parallel_for(std::size_t n, Exec ex, F&& body) {
#ifdef _OPENMP
    if (ex == Exec::par) {
        #pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)ex;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace qcap
