#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace promethee::detail {

/// Run fn(0), ..., fn(count-1) across at most `workers` threads. Tasks write
/// to disjoint slots, so any schedule yields identical results; with
/// workers <= 1 everything runs inline on the calling thread. Exceptions from
/// tasks are not expected (engine kernels are noexcept in spirit); the first
/// one escapes on the calling thread after all workers join.
template <typename Fn>
void for_each_index(std::size_t count, std::size_t workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t thread_count = workers < count ? workers : count;
    std::atomic<std::size_t> next{0};
    auto pump = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(thread_count - 1);
    for (std::size_t t = 1; t < thread_count; ++t) pool.emplace_back(pump);
    pump();
    for (auto& th : pool) th.join();
}

}  // namespace promethee::detail
