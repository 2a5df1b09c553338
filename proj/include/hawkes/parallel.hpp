#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hawkes {

/// Worker-pool cap: explicit set_thread_count() wins, then HAWKES_LAB_THREADS,
/// then hardware concurrency.
int thread_count();
void set_thread_count(int n); // n <= 0 restores the default

/// Splits [begin, end) into contiguous chunks, one per worker, and runs
/// fn(chunk_begin, chunk_end) on each. Runs inline when a single worker
/// suffices.
template <typename Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        fn(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace hawkes
