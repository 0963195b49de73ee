#include "fftstencil/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace fftstencil {

namespace {
std::atomic<int> g_threads{0};

int resolved_threads() {
    int t = g_threads.load(std::memory_order_relaxed);
    if (t > 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}
} // namespace

void set_thread_count(int threads) { g_threads.store(threads, std::memory_order_relaxed); }

int thread_count() { return resolved_threads(); }

void parallel_for(Index n, const std::function<void(Index, Index)>& fn) {
    if (n <= 0) return;
    const int want = resolved_threads();
    // Not worth spawning threads for tiny ranges.
    if (want <= 1 || n < 2048) {
        fn(0, n);
        return;
    }
    const int workers = static_cast<int>(std::min<Index>(want, n));
    const Index chunk = (n + workers - 1) / workers;

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};

    auto body = [&](Index begin, Index end) {
        try {
            fn(begin, end);
        } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
        }
    };

    for (int w = 1; w < workers; ++w) {
        Index begin = w * chunk;
        Index end = std::min<Index>(begin + chunk, n);
        if (begin >= end) break;
        pool.emplace_back(body, begin, end);
    }
    body(0, std::min<Index>(chunk, n));
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(first_error);
}

} // namespace fftstencil
