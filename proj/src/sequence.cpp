#include "aplab/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace aplab {

namespace {
// Pairwise summation: O(eps log n) error instead of O(eps n), deterministic.
cplx pairwise_sum(const cplx* data, std::size_t n) {
    if (n <= 32) {
        cplx s{};
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}
}  // namespace

cplx WeightedSequence::sum() const { return pairwise_sum(values.data(), values.size()); }

cplx WeightedSequence::mean() const {
    if (values.empty()) return {};
    return sum() / static_cast<double>(values.size());
}

double WeightedSequence::abs_sum() const {
    double s = 0;
    for (const cplx& v : values) s += std::abs(v);
    return s;
}

double WeightedSequence::max_abs() const {
    double m = 0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

bool WeightedSequence::is_real(double tol) const {
    for (const cplx& v : values)
        if (std::abs(v.imag()) > tol) return false;
    return true;
}

WeightedSequence const_sequence(std::int64_t n, cplx c) {
    return {1, std::vector<cplx>(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)), c)};
}

WeightedSequence ones(std::int64_t n) { return const_sequence(n, 1.0); }

WeightedSequence truncate_to_interval(const WeightedSequence& f, std::int64_t N) {
    const std::int64_t lo = std::max<std::int64_t>(1, f.first());
    const std::int64_t hi = std::min<std::int64_t>(N, f.last());
    if (lo > hi) return {1, {cplx{}}};
    std::vector<cplx> vals(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t n = lo; n <= hi; ++n) vals[static_cast<std::size_t>(n - lo)] = f.at(n);
    return {lo, std::move(vals)};
}

WeightedSequence conjugate(const WeightedSequence& f) {
    WeightedSequence g = f;
    for (cplx& v : g.values) v = std::conj(v);
    return g;
}

WeightedSequence reflect(const WeightedSequence& f) {
    WeightedSequence g;
    g.offset = -f.last();
    g.values.assign(f.values.rbegin(), f.values.rend());
    return g;
}

namespace {
WeightedSequence combine(const WeightedSequence& a, const WeightedSequence& b, double sign) {
    const std::int64_t lo = std::min(a.first(), b.first());
    const std::int64_t hi = std::max(a.last(), b.last());
    WeightedSequence out{lo, std::vector<cplx>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::int64_t n = lo; n <= hi; ++n) out.ref(n) = a.at(n) + sign * b.at(n);
    return out;
}
}  // namespace

WeightedSequence operator+(const WeightedSequence& a, const WeightedSequence& b) {
    return combine(a, b, 1.0);
}

WeightedSequence operator-(const WeightedSequence& a, const WeightedSequence& b) {
    return combine(a, b, -1.0);
}

WeightedSequence pointwise(const WeightedSequence& a, const WeightedSequence& b) {
    const std::int64_t lo = std::max(a.first(), b.first());
    const std::int64_t hi = std::min(a.last(), b.last());
    if (lo > hi) return {1, {cplx{}}};
    WeightedSequence out{lo, std::vector<cplx>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::int64_t n = lo; n <= hi; ++n) out.ref(n) = a.at(n) * b.at(n);
    return out;
}

WeightedSequence scale(const WeightedSequence& f, cplx c) {
    WeightedSequence g = f;
    for (cplx& v : g.values) v *= c;
    return g;
}

}  // namespace aplab
