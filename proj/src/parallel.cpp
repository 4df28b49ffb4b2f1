#include "defq/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace defq::par {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int n) {
    g_max_threads.store(n < 1 ? 1 : n);
}

int max_threads() {
    return g_max_threads.load();
}

bool openmp_compiled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void for_n_serial(std::size_t n, const IndexFn& fn) {
    for (std::size_t i = 0; i < n; ++i)
        fn(i);
}

void for_n_parallel(std::size_t n, const IndexFn& fn) {
#ifdef _OPENMP
    const int threads = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        fn(static_cast<std::size_t>(i));
#else
    for_n_serial(n, fn);
#endif
}

void for_n(std::size_t n, const IndexFn& fn) {
    if (max_threads() > 1 && n > 1)
        for_n_parallel(n, fn);
    else
        for_n_serial(n, fn);
}

}  // namespace defq::par
