#ifndef ASSASSIN_PARALLEL_HPP_
#define ASSASSIN_PARALLEL_HPP_

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace assassin {

// Worker count: ASSASSIN_SIM_THREADS when set and > 0, otherwise (value 0 or
// unset) the OpenMP default. Serial builds always report 1.
int resolve_thread_count();

// Serial reference kernel: fn(replica_index) for 0..count-1 in order.
template <class Fn>
void for_each_replica_serial(std::uint64_t count, Fn&& fn) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
}

// OpenMP kernel. Each replica owns its stream and its output slot, so the
// results are identical to the serial reference for any worker count.
template <class Fn>
void for_each_replica(std::uint64_t count, Fn&& fn) {
#ifdef _OPENMP
    const int threads = resolve_thread_count();
    if (threads > 1 && count > 1) {
        const std::int64_t n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
        for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::uint64_t>(i));
        return;
    }
#endif
    for_each_replica_serial(count, fn);
}

}  // namespace assassin

#endif  // ASSASSIN_PARALLEL_HPP_
