// parallel.hpp - range-partitioned parallelism for the scans.

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cmgaps {

// Worker count: hardware concurrency, capped by CMGAPS_THREADS when set.
unsigned thread_count();

// Runs body(chunk) for every chunk in [0, n_chunks) on up to `threads`
// workers. The first exception thrown by any chunk is rethrown here.
template <class Body>
void parallel_chunks(std::size_t n_chunks, unsigned threads, Body&& body) {
    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                body(c);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n_chunks);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    unsigned n = threads < n_chunks ? threads : static_cast<unsigned>(n_chunks);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace cmgaps
