#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hmlab {

/// Index-parallel loop with a fixed worker count; results must be written to
/// preallocated slots so output order stays deterministic.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int nw = std::min(threads, n);
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace hmlab
