#include "aplab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aplab/common.hpp"
#include "aplab/gowers.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

std::int64_t APPattern::spread() const {
    std::int64_t lo = coefficients.front(), hi = coefficients.front();
    for (std::int64_t c : coefficients) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return hi - lo;
}

APPattern APPattern::arithmetic(int k) {
    APPattern p;
    for (int i = 0; i < k; ++i) p.coefficients.push_back(i);
    return p;
}

namespace {
void check_pattern(const APPattern& p) {
    if (p.coefficients.empty()) throw std::domain_error("pattern: no coefficients");
    for (std::size_t i = 0; i < p.coefficients.size(); ++i)
        for (std::size_t j = i + 1; j < p.coefficients.size(); ++j)
            if (p.coefficients[i] == p.coefficients[j])
                throw std::domain_error("pattern: coefficients must be pairwise distinct");
}
}  // namespace

cplx ap_average(const std::vector<WeightedSequence>& fs, const APPattern& pattern,
                std::int64_t N) {
    check_pattern(pattern);
    if (fs.size() != pattern.coefficients.size())
        throw std::domain_error("ap_average: need one sequence per coefficient");
    if (N < 1) throw std::domain_error("ap_average: N must be >= 1");
    std::int64_t span = 0;
    for (const auto& f : fs) span = std::max(span, f.last() - f.first() + 1);
    check_budget("ap_average", static_cast<double>(N) * static_cast<double>(span) *
                                   static_cast<double>(fs.size()));

    // For each d the feasible x form an interval cut out by every support.
    const cplx total = chunked_sum<cplx>(N, [&](std::int64_t i) {
        const std::int64_t d = i + 1;
        std::int64_t lo = INT64_MIN, hi = INT64_MAX;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const std::int64_t c = pattern.coefficients[j];
            lo = std::max(lo, fs[j].first() - c * d);
            hi = std::min(hi, fs[j].last() - c * d);
        }
        cplx s{};
        for (std::int64_t x = lo; x <= hi; ++x) {
            cplx prod = 1.0;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                prod *= fs[j].at(x + pattern.coefficients[j] * d);
                if (prod == cplx{}) break;
            }
            s += prod;
        }
        return s;
    });
    return total / (static_cast<double>(N) * static_cast<double>(N));
}

std::int64_t ap_count_exact(const std::vector<std::int64_t>& A, int k) {
    if (k < 3) throw std::domain_error("ap_count_exact: k must be >= 3");
    if (A.size() < static_cast<std::size_t>(k)) return 0;
    std::vector<std::int64_t> sorted = A;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::int64_t lo = sorted.front(), hi = sorted.back();
    std::vector<bool> member(static_cast<std::size_t>(hi - lo + 1), false);
    for (std::int64_t a : sorted) member[static_cast<std::size_t>(a - lo)] = true;
    const auto in = [&](std::int64_t v) {
        return v >= lo && v <= hi && member[static_cast<std::size_t>(v - lo)];
    };

    // Walk pairs of first two elements; the rest of the progression is a
    // membership lookup.
    return chunked_sum<std::int64_t>(static_cast<std::int64_t>(sorted.size()), [&](std::int64_t i) {
        std::int64_t count = 0;
        const std::int64_t x = sorted[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < sorted.size(); ++j) {
            const std::int64_t d = sorted[j] - x;
            if (x + (k - 1) * d > hi) break;
            bool ok = true;
            for (int t = 2; t < k; ++t)
                if (!in(x + t * d)) { ok = false; break; }
            count += ok ? 1 : 0;
        }
        return count;
    });
}

VonNeumannReport von_neumann_gap(const std::vector<WeightedSequence>& fs,
                                 const std::vector<WeightedSequence>& gs,
                                 const WeightedSequence& nu, const APPattern& pattern,
                                 std::int64_t N) {
    check_pattern(pattern);
    const int k = pattern.k();
    if (fs.size() != static_cast<std::size_t>(k) || gs.size() != static_cast<std::size_t>(k))
        throw std::domain_error("von_neumann_gap: need k sequences on each side");
    for (int i = 0; i < k; ++i) {
        const auto check = [&](const WeightedSequence& f, const char* side) {
            for (std::int64_t n = f.first(); n <= f.last(); ++n)
                if (std::abs(f.at(n)) > nu.at(n).real() + 1e-12)
                    throw std::domain_error(std::string("von_neumann_gap: ") + side + "_" +
                                            std::to_string(i + 1) +
                                            " exceeds the majorant at n=" + std::to_string(n));
        };
        check(fs[static_cast<std::size_t>(i)], "f");
        check(gs[static_cast<std::size_t>(i)], "g");
    }

    VonNeumannReport rep;
    const cplx tf = ap_average(fs, pattern, N);
    const cplx tg = ap_average(gs, pattern, N);
    rep.t_f = tf.real();
    rep.t_g = tg.real();
    rep.gap = std::abs(tf - tg);
    const std::int64_t cN = pattern.spread() * N;
    for (int i = 0; i < k; ++i) {
        const auto d = interval_norm(fs[static_cast<std::size_t>(i)] - gs[static_cast<std::size_t>(i)],
                                     cN, k - 1);
        rep.distances.push_back(d.root_value);
        rep.max_distance = std::max(rep.max_distance, d.root_value);
    }
    if (rep.max_distance >= 1e-12) {
        rep.ratio = rep.gap / rep.max_distance;
        rep.ratio_defined = true;
    } else {
        rep.ratio = rep.gap < 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
        rep.ratio_defined = false;
    }
    return rep;
}

VarnavidesResult varnavides_experiment(const WeightedSequence& g, int k, std::int64_t N) {
    if (k < 2) throw std::domain_error("varnavides_experiment: k must be >= 2");
    for (const cplx& v : g.values)
        if (v.real() < -1e-12 || v.real() > 1.0 + 1e-12 || std::abs(v.imag()) > 1e-12)
            throw std::domain_error("varnavides_experiment: values must lie in [0, 1]");
    VarnavidesResult res;
    double dens = 0;
    for (std::int64_t n = 1; n <= N; ++n) dens += g.at(n).real();
    res.density = dens / static_cast<double>(N);

    const double total = chunked_sum<double>(N, [&](std::int64_t i) {
        const std::int64_t d = i + 1;
        double s = 0;
        for (std::int64_t n = 1; n <= N; ++n) {
            double prod = 1.0;
            for (int t = 0; t < k; ++t) {
                prod *= g.at(n + t * d).real();
                if (prod == 0.0) break;
            }
            s += prod;
        }
        return s;
    });
    res.ap_average = total / (static_cast<double>(N) * static_cast<double>(N));
    return res;
}

}  // namespace aplab
