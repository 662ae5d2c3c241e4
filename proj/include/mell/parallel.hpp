#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace mell {

// Worker count resolution: explicit request, then the MELL_JOBS environment
// override, then hardware concurrency.
inline int resolve_jobs(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MELL_JOBS")) {
        const int j = std::atoi(env);
        if (j > 0) return j;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-parallel map over [0, n). fn must be safe to run concurrently on
// distinct indices; results should be written to pre-sized slots so output
// order stays canonical regardless of completion order.
template <class Fn>
void parallel_for(long n, int jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || n <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const int n_threads = static_cast<int>(std::min<long>(jobs, n));
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            while (true) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace mell
