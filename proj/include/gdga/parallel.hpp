#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

#include "gdga/report.hpp"

namespace gdga {

// GAPPED_DGA_THREADS caps the worker count; unset means hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GAPPED_DGA_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return hw;
}

template <class F>
void parallel_for(std::size_t n, F&& f) {
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
        });
    for (auto& t : pool) t.join();
}

// Runs f(i, local) for every task and folds the local checks in task order, so the
// reported witness is the same for any number of workers.
template <class F>
void run_check(Check& c, std::size_t n, F&& f) {
    std::vector<Check> local(n);
    parallel_for(n, [&](std::size_t i) { f(i, local[i]); });
    for (auto& l : local) {
        c.evaluated += l.evaluated;
        c.skipped += l.skipped;
        if (!l.passed) c.fail(l.detail, l.witness);
    }
}

}  // namespace gdga
