#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lzdg {

inline unsigned resolve_threads(unsigned threads) {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// run work(lo, hi) over a partition of [0, total); results must not
// depend on the partitioning
inline void parallel_ranges(size_t total, unsigned threads,
                            const std::function<void(size_t, size_t)>& work) {
    threads = std::max(1u, resolve_threads(threads));
    if (threads == 1 || total < 2 * threads) {
        work(0, total);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        size_t lo = std::min(total, static_cast<size_t>(t) * chunk);
        size_t hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
}

} // namespace lzdg
