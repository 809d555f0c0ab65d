#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace edss {

/// Worker count: EDSS_THREADS when set, otherwise the hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("EDSS_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n); results must be written to per-index slots.
inline void parallel_for_index(int n, const std::function<void(int)>& fn) {
    int workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace edss
