#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghl::par {

// Floating-point accumulation order must not depend on the thread count, or
// outputs stop being byte-identical between runs. Work is therefore cut into
// fixed blocks; each block is summed serially into its own row of scratch,
// and rows are folded in index order afterwards. The schedule only decides
// who computes a block, never the arithmetic within or across blocks.
inline constexpr std::size_t kBlockSize = 1024;

// body(i, acc) must add point i's contribution into acc[0..width).
template <class Body>
void blocked_accumulate(std::size_t n, std::size_t width, double* out, Body&& body,
                        int threads = 0) {
    const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<double> scratch(nblocks * width, 0.0);

    auto run_block = [&](std::size_t b) {
        double* acc = scratch.data() + b * width;
        const std::size_t lo = b * kBlockSize;
        const std::size_t hi = lo + kBlockSize < n ? lo + kBlockSize : n;
        for (std::size_t i = lo; i < hi; ++i) body(i, acc);
    };

#ifdef _OPENMP
    if (threads != 1) {
        // Exceptions may not escape the parallel region; park the first one.
        std::exception_ptr failure = nullptr;
        std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                run_block(static_cast<std::size_t>(b));
            } catch (...) {
#pragma omp critical(ghl_par_failure)
                {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        }
        if (failure) std::rethrow_exception(failure);
    } else
#endif
    {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    }

    for (std::size_t j = 0; j < width; ++j) out[j] = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b)
        for (std::size_t j = 0; j < width; ++j) out[j] += scratch[b * width + j];
}

// Serial reference with identical blocking and fold order; used by tests and
// the benchmark to pin down the parallel path.
template <class Body>
void blocked_accumulate_serial(std::size_t n, std::size_t width, double* out, Body&& body) {
    blocked_accumulate(n, width, out, static_cast<Body&&>(body), 1);
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace ghl::par
