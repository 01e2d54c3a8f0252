#include "aplab/parallel.hpp"

#include <atomic>
#include <mutex>
#include <algorithm>
#include <cstdlib>
#include <thread>

#include "aplab/common.hpp"

namespace aplab {

namespace {
std::atomic<int> g_threads{1};
std::atomic<std::int64_t> g_budget_cap{-1};
}  // namespace

int thread_count() { return g_threads.load(std::memory_order_relaxed); }

void set_thread_count(int n) { g_threads.store(std::max(1, n), std::memory_order_relaxed); }

std::int64_t budget_cap() {
    auto cap = g_budget_cap.load(std::memory_order_relaxed);
    if (cap < 0) {
        cap = 1'000'000'000;
        if (const char* env = std::getenv("APLAB_BUDGET_CAP")) {
            char* end = nullptr;
            const long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0) cap = v;
        }
        g_budget_cap.store(cap, std::memory_order_relaxed);
    }
    return cap;
}

void set_budget_cap(std::int64_t cap) { g_budget_cap.store(cap, std::memory_order_relaxed); }

namespace detail {

namespace {
thread_local bool g_inside_chunked = false;
}

void run_chunks(std::int64_t n, void* ctx, void (*body)(void*, std::int64_t, std::int64_t, int)) {
    const int chunks = kChunks;
    const std::int64_t per = (n + chunks - 1) / chunks;
    // nested chunked regions run serially; the outermost one owns the pool
    const int workers = g_inside_chunked ? 1 : std::min<int>(thread_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) {
            const std::int64_t lo = static_cast<std::int64_t>(c) * per;
            if (lo >= n) break;
            body(ctx, lo, std::min(n, lo + per), c);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        g_inside_chunked = true;
        try {
            for (;;) {
                const int c = next.fetch_add(1, std::memory_order_relaxed);
                if (c >= chunks) return;
                const std::int64_t lo = static_cast<std::int64_t>(c) * per;
                if (lo >= n) continue;
                body(ctx, lo, std::min(n, lo + per), c);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail
}  // namespace aplab
