#include "hawkes/parallel.hpp"

#include <atomic>
#include <string>

namespace hawkes {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    const int forced = g_threads.load(std::memory_order_relaxed);
    if (forced > 0) return forced;
    if (const char* env = std::getenv("HAWKES_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_threads.store(n, std::memory_order_relaxed); }

} // namespace hawkes
