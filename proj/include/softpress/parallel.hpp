#pragma once

#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace softpress {

/// Worker count: SOFT_PRESS_THREADS when set, else hardware concurrency.
inline int default_thread_count() {
    if (const char* env = std::getenv("SOFT_PRESS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Static block partition of [0, n); fn(i) must only write state owned by i,
/// which keeps results identical for every thread count. The first worker
/// exception is rethrown on the calling thread after the join.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr error;
    std::mutex error_mu;
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t lo = n * t / nt, hi = n * (t + 1) / nt;
        pool.emplace_back([lo, hi, &fn, &error, &error_mu] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace softpress
