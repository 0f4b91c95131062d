#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace disagvar {

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one per
// hardware thread; with a single core it degrades to a plain loop. Results
// must be written to disjoint slots so the output is order-independent.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

} // namespace disagvar
