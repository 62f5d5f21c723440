#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace coregraph {

// Worker cap shared by all parallel loops. 0 restores the hardware default.
// Set once at startup (CLI --threads / COREGRAPH_THREADS); not synchronized
// against concurrently running loops.
void set_max_threads(unsigned n);
unsigned max_threads();

// Splits [begin, end) into one contiguous chunk per worker and runs
// fn(lo, hi) on each. Chunks are disjoint, so any fn that only writes
// per-index outputs yields results independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, std::size_t min_grain, Fn&& fn) {
    const std::size_t total = end > begin ? end - begin : 0;
    if (total == 0) return;

    std::size_t workers = max_threads();
    if (min_grain > 0) workers = std::min<std::size_t>(workers, (total + min_grain - 1) / min_grain);
    if (workers <= 1) {
        fn(begin, end);
        return;
    }

    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        if (lo >= end) break;
        const std::size_t hi = std::min(end, lo + chunk);
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace coregraph
