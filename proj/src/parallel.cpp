#include "coregraph/parallel.hpp"

#include <atomic>

namespace coregraph {

namespace {
std::atomic<unsigned> g_max_threads{0};  // 0 = hardware default
}

void set_max_threads(unsigned n) {
    g_max_threads.store(n, std::memory_order_relaxed);
}

unsigned max_threads() {
    unsigned n = g_max_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    return n;
}

}  // namespace coregraph
