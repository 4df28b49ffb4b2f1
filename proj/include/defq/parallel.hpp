#pragma once

#include <cstddef>
#include <functional>

namespace defq::par {

/// Worker cap for the OpenMP kernels. 1 selects the serial path everywhere.
void set_max_threads(int n);
int max_threads();
bool openmp_compiled();

using IndexFn = std::function<void(std::size_t)>;

/// Plain loop; the reference implementation the parallel kernels are tested
/// against.
void for_n_serial(std::size_t n, const IndexFn& fn);

/// OpenMP loop over [0, n). Each index writes only its own slot, so results
/// are identical to the serial path.
void for_n_parallel(std::size_t n, const IndexFn& fn);

/// Dispatches on max_threads().
void for_n(std::size_t n, const IndexFn& fn);

}  // namespace defq::par
