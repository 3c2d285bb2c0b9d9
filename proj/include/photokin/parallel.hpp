#pragma once

#include <cstddef>

namespace photokin {

/// Runs body(i) for i = 0..count-1, across OpenMP workers when parallel is
/// set. Bodies must write only to their own slot; every kernel in the
/// library keeps per-slot accumulation serial and compensated, so the two
/// paths and any worker count produce identical bits.
template <class F>
void parallel_for(bool parallel, std::size_t count, F&& body) {
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace photokin
