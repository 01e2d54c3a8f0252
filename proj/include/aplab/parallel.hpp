#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace aplab {

// Worker count used by the chunked reducers below.  Results are independent
// of this setting: work is split into a fixed number of chunks, each chunk is
// accumulated serially, and the per-chunk partials are combined in chunk
// order, so floating-point rounding is identical for any thread count.
int thread_count();
void set_thread_count(int n);

namespace detail {
constexpr int kChunks = 64;
void run_chunks(std::int64_t n, void* ctx, void (*body)(void*, std::int64_t, std::int64_t, int));
}  // namespace detail

/// Deterministic parallel sum of fn(i) for i in [0, n).
template <class T, class Fn>
T chunked_sum(std::int64_t n, Fn&& fn) {
    if (n <= 0) return T{};
    struct Ctx {
        Fn* fn;
        std::vector<T> partial;
    } ctx{&fn, std::vector<T>(detail::kChunks, T{})};
    detail::run_chunks(n, &ctx, [](void* p, std::int64_t lo, std::int64_t hi, int chunk) {
        auto* c = static_cast<Ctx*>(p);
        T acc{};
        for (std::int64_t i = lo; i < hi; ++i) acc += (*c->fn)(i);
        c->partial[static_cast<std::size_t>(chunk)] = acc;
    });
    T total{};
    for (const T& t : ctx.partial) total += t;
    return total;
}

/// Deterministic parallel fill: out[i] = fn(i) for i in [0, n).
template <class T, class Fn>
void chunked_map(std::int64_t n, std::vector<T>& out, Fn&& fn) {
    out.assign(static_cast<std::size_t>(n), T{});
    if (n <= 0) return;
    struct Ctx {
        Fn* fn;
        std::vector<T>* out;
    } ctx{&fn, &out};
    detail::run_chunks(n, &ctx, [](void* p, std::int64_t lo, std::int64_t hi, int) {
        auto* c = static_cast<Ctx*>(p);
        for (std::int64_t i = lo; i < hi; ++i)
            (*c->out)[static_cast<std::size_t>(i)] = (*c->fn)(i);
    });
}

}  // namespace aplab
