#pragma once

// Index-parallel loops. Every index writes only its own output slot and all
// reductions happen afterwards in index order, so results do not depend on
// the worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fofana {

namespace detail {
inline thread_local bool in_parallel_region = false;

inline std::atomic<unsigned>& worker_setting()
{
    static std::atomic<unsigned> workers{0};
    return workers;
}
} // namespace detail

/// 0 means "use FOFANA_THREADS, else hardware concurrency".
inline void set_worker_count(unsigned n) { detail::worker_setting() = n; }

inline unsigned worker_count()
{
    unsigned n = detail::worker_setting();
    if (n == 0) {
        if (const char* env = std::getenv("FOFANA_THREADS")) n = static_cast<unsigned>(std::atoi(env));
        if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    }
    return n;
}

/// Runs fn(i) for i in [0, count). Nested calls run serially.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn)
{
    unsigned workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1 || detail::in_parallel_region) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        detail::in_parallel_region = true;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
        detail::in_parallel_region = false;
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    pool.clear();
    if (error) std::rethrow_exception(error);
}

} // namespace fofana
