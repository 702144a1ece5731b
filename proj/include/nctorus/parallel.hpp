#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nctorus {

/// Worker cap: NCTORUS_THREADS if set and positive, else the hardware concurrency.
inline std::size_t worker_limit()
{
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NCTORUS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return std::min<std::size_t>(hw, std::size_t(v));
        } catch (const std::exception&) {
        }
    }
    return hw;
}

/// Runs task(i) for i in [0, count) on a bounded pool. The first exception is
/// rethrown after all workers have joined.
template <typename Task>
void parallel_for(std::size_t count, Task&& task, std::size_t max_workers = worker_limit())
{
    const std::size_t workers = std::max<std::size_t>(1, std::min(max_workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace nctorus
