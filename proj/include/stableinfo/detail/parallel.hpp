#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stableinfo::detail {

/// Worker count: STABLE_INFO_THREADS if set (clamped to >= 1), otherwise the
/// hardware concurrency.
inline int max_threads() {
    if (const char* env = std::getenv("STABLE_INFO_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(0..n-1), possibly concurrently. Callers must write results into
/// per-index slots; completion order is unspecified but the result layout is
/// index-determined, so output is deterministic.
template <class F>
void parallel_for(int n, F&& fn) {
    const int nt = std::min(max_threads(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr eptr;
    std::mutex eptr_mu;
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::scoped_lock lk(eptr_mu);
                if (!failed.exchange(true)) eptr = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (eptr) std::rethrow_exception(eptr);
}

}  // namespace stableinfo::detail
