#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enkfsmcs {

enum class ExecMode { serial, openmp };

namespace detail {
inline std::atomic<ExecMode>& exec_mode_flag() {
#ifdef _OPENMP
    static std::atomic<ExecMode> mode{ExecMode::openmp};
#else
    static std::atomic<ExecMode> mode{ExecMode::serial};
#endif
    return mode;
}
} // namespace detail

inline ExecMode exec_mode() { return detail::exec_mode_flag().load(); }
inline void set_exec_mode(ExecMode m) { detail::exec_mode_flag().store(m); }

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs body(i) for i in [0, n). Bodies must write disjoint outputs and draw
// randomness only from per-index streams, so the OpenMP path produces results
// bit-identical to the serial reference path.
template <class F>
void parallel_for(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
    if (exec_mode() == ExecMode::openmp && n > 1) {
        std::exception_ptr error;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(enkfsmcs_parallel_for_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

} // namespace enkfsmcs
