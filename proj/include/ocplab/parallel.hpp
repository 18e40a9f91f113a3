#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace ocplab {

/// Process-wide worker count used by parallel maps. Results are required to be
/// bit-identical for any value, so loops must write disjoint slots and must not
/// reduce in scheduling order.
inline std::atomic<int>& worker_count_slot() {
    static std::atomic<int> w{0};  // 0 = hardware concurrency
    return w;
}

inline void set_worker_count(int w) { worker_count_slot().store(w); }

inline int worker_count() {
    int w = worker_count_slot().load();
    if (w > 0) return w;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Parallel map over [0, n): calls fn(i) for every index, partitioned in
/// contiguous chunks. fn must only write state owned by index i.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = worker_count();
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::size_t chunk = (n + nw - 1) / nw;
    for (std::size_t w = 0; w < nw; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace ocplab
