#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mtsc {

/// Number of worker threads used by parallel_for when `threads == 0`.
/// Overridable through the MTSC_THREADS environment variable.
unsigned default_thread_count();

/// Runs fn(i) for i in [0, n) across up to `threads` workers with a static
/// chunked partition. Results must be written to per-index slots; the split is
/// deterministic so parallel runs produce identical output to serial ones.
/// The first exception thrown by any worker is rethrown on the caller thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
    if (n == 0) return;
    unsigned t = threads ? threads : default_thread_count();
    if (t > n) t = static_cast<unsigned>(n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < t; ++w) {
        std::size_t begin = n * w / t;
        std::size_t end = n * (w + 1) / t;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace mtsc
