#pragma once

#include <cstddef>
#include <exception>
#include <type_traits>
#include <utility>
#include <vector>

#include <omp.h>

namespace gridsde::mc {

// Worker count: GRIDSDE_THREADS env var wins, then the OpenMP default.
int worker_count();
void set_worker_count(int workers);

// Serial reference runner: results in path order.
template <typename Fn>
auto run_paths_serial(std::size_t n_paths, Fn&& fn) {
    using T = std::invoke_result_t<Fn, std::size_t>;
    std::vector<T> out(n_paths);
    for (std::size_t i = 0; i < n_paths; ++i) out[i] = fn(i);
    return out;
}

// OpenMP runner. Each path is an independent job keyed by its index; results
// land in path order, so downstream reductions see the same sequence as the
// serial runner regardless of the thread count.
template <typename Fn>
auto run_paths(std::size_t n_paths, Fn&& fn) {
    using T = std::invoke_result_t<Fn, std::size_t>;
    std::vector<T> out(n_paths);
    std::exception_ptr error;
    const int workers = worker_count();
#pragma omp parallel for schedule(dynamic, 32) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(n_paths); ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace gridsde::mc
