#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qpmd {

/// 0 means "auto": one worker per hardware thread.
inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into contiguous chunks, one per worker, and runs
/// fn(lo, hi, worker) on each. The first exception thrown by any worker is
/// rethrown on the calling thread after all workers finish.
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned jobs, Fn&& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_jobs(jobs), std::max<std::uint64_t>(total, 1)));
    if (workers <= 1) {
        fn(std::uint64_t{0}, total, 0u);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex mu;
    const std::uint64_t step = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(total, w * step), hi = std::min(total, lo + step);
        threads.emplace_back([&, lo, hi, w] {
            try {
                fn(lo, hi, w);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace qpmd
