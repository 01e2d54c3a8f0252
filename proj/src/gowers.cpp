#include "aplab/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "aplab/common.hpp"
#include "aplab/fft.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

WeightedSequence difference(const WeightedSequence& f, std::int64_t h) {
    // Support of conj(f(.+h)) f(.) is [first, last] shrunk by |h|.
    const std::int64_t lo = std::max(f.first(), f.first() - h);
    const std::int64_t hi = std::min(f.last(), f.last() - h);
    if (lo > hi) return {1, {cplx{}}};
    WeightedSequence g{lo, std::vector<cplx>(static_cast<std::size_t>(hi - lo + 1))};
    for (std::int64_t n = lo; n <= hi; ++n) g.ref(n) = std::conj(f.at(n + h)) * f.at(n);
    return g;
}

namespace {

double clamp_power(double power, int k, double scale, const char* who) {
    if (power >= 0) return power;
    double bound = 1e-9;
    for (int i = 0; i < k; ++i) bound *= scale * scale;  // 1e-9 * scale^{2^k} guard, scale >= 1
    bound = std::max(bound, 1e-9);
    if (-power > bound)
        throw std::runtime_error(std::string(who) +
                                 ": power value negative beyond tolerance: " + std::to_string(power));
    return 0.0;
}

// Direct enumeration of sum_{n, h in Z^k} prod_{w in {0,1}^k} C^{|w|} f(n + w.h).
// Only tuples with every factor inside the support contribute; for fixed h the
// feasible n form an interval of length len - sum |h_i|.
cplx enumerate_power(const WeightedSequence& f, int k) {
    const std::int64_t L = f.length();
    const std::int64_t lo = f.first(), hi = f.last();
    const int points = 1 << k;
    std::vector<std::int64_t> h(static_cast<std::size_t>(k), -(L - 1));
    std::vector<std::int64_t> dot(static_cast<std::size_t>(points));  // w.h per subset w
    cplx total{};
    for (;;) {
        // subset sums and their spread
        std::int64_t smin = 0, smax = 0;
        for (int w = 0; w < points; ++w) {
            std::int64_t s = 0;
            for (int i = 0; i < k; ++i)
                if (w & (1 << i)) s += h[static_cast<std::size_t>(i)];
            dot[static_cast<std::size_t>(w)] = s;
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
        const std::int64_t nlo = lo - smin, nhi = hi - smax;
        for (std::int64_t n = nlo; n <= nhi; ++n) {
            cplx prod = 1.0;
            for (int w = 0; w < points; ++w) {
                const cplx v = f.at(n + dot[static_cast<std::size_t>(w)]);
                prod *= (std::popcount(static_cast<unsigned>(w)) % 2 == 0) ? v : std::conj(v);
            }
            total += prod;
        }
        // odometer over h in [-(L-1), L-1]^k
        int i = 0;
        for (; i < k; ++i) {
            if (++h[static_cast<std::size_t>(i)] <= L - 1) break;
            h[static_cast<std::size_t>(i)] = -(L - 1);
        }
        if (i == k) break;
    }
    return total;
}

// power_2 via the padded-DFT identity: with M >= 2*len there is no wraparound,
// so sum_h |autocorr(h)|^2 = (1/M) sum_xi |fhat(xi)|^4.
double power2_fft(const WeightedSequence& f) {
    const std::size_t L = f.values.size();
    const std::size_t M = next_pow2(2 * L);
    std::vector<cplx> buf(M, cplx{});
    std::copy(f.values.begin(), f.values.end(), buf.begin());
    fft_forward(buf);
    double s = 0;
    for (const cplx& z : buf) {
        const double a = std::norm(z);
        s += a * a;
    }
    return s / static_cast<double>(M);
}

double recursion_power(const WeightedSequence& f, int k) {
    if (k == 1) return std::norm(f.sum());
    if (k == 2) return power2_fft(f);
    const std::int64_t L = f.length();
    const std::int64_t H = 2 * L - 1;  // h in [-(L-1), L-1]
    return chunked_sum<double>(H, [&](std::int64_t i) {
        const std::int64_t h = i - (L - 1);
        return recursion_power(difference(f, h), k - 1);
    });
}

double enum_cost(std::int64_t L, int k) {
    double c = static_cast<double>(L);
    for (int i = 0; i < k; ++i) c *= 2.0 * static_cast<double>(L);
    return c;
}

}  // namespace

GowersValue unnormalized_norm(const WeightedSequence& f, int k, NormStrategy strategy) {
    if (k < 1) throw std::domain_error("unnormalized_norm: k must be >= 1");
    const std::int64_t L = f.length();
    double power = 0;
    if (strategy == NormStrategy::Enumeration) {
        check_budget("unnormalized_norm enumeration", enum_cost(L, k));
        const cplx total = enumerate_power(f, k);
        // The full sum is real by conjugation symmetry of the h-cube.
        power = total.real();
    } else {
        if (k >= 3) {
            double rec_cost = 10.0 * static_cast<double>(L) * std::log2(std::max<double>(L, 2));
            for (int i = 0; i < k - 2; ++i) rec_cost *= 2.0 * static_cast<double>(L);
            check_budget("unnormalized_norm recursion", rec_cost);
        }
        power = recursion_power(f, k);
    }
    GowersValue v;
    v.k = k;
    const double scale = std::max(1.0, f.max_abs() * static_cast<double>(std::max<std::int64_t>(L, 1)));
    v.power_value = clamp_power(power, k, scale, "unnormalized_norm");
    v.root_value = std::pow(v.power_value, 1.0 / static_cast<double>(1 << k));
    v.normalized = false;
    return v;
}

GowersValue interval_norm(const WeightedSequence& f, std::int64_t N, int k, NormStrategy strategy) {
    if (N < 1) throw std::domain_error("interval_norm: N must be >= 1");
    const GowersValue num = unnormalized_norm(truncate_to_interval(f, N), k, strategy);
    const GowersValue den = unnormalized_norm(ones(N), k,
                                              strategy == NormStrategy::Enumeration
                                                  ? NormStrategy::Enumeration
                                                  : NormStrategy::Auto);
    GowersValue v;
    v.k = k;
    v.root_value = den.root_value > 0 ? num.root_value / den.root_value : 0.0;
    v.power_value = std::pow(v.root_value, static_cast<double>(1 << k));
    v.normalized = true;
    return v;
}

cplx gcs_form(const std::vector<WeightedSequence>& family, int k) {
    if (k < 1) throw std::domain_error("gcs_form: k must be >= 1");
    const std::size_t points = static_cast<std::size_t>(1) << k;
    if (family.size() != points)
        throw std::domain_error("gcs_form: family must have exactly 2^k sequences");
    std::int64_t lo = family[0].first(), hi = family[0].last();
    for (const auto& g : family) {
        lo = std::min(lo, g.first());
        hi = std::max(hi, g.last());
    }
    const std::int64_t span = hi - lo + 1;
    double cost = static_cast<double>(span) * static_cast<double>(points);
    for (int i = 0; i < k; ++i) cost *= 2.0 * static_cast<double>(span);
    check_budget("gcs_form", cost);

    std::vector<std::int64_t> h(static_cast<std::size_t>(k), -(span - 1));
    std::vector<std::int64_t> dot(points);
    cplx total{};
    for (;;) {
        std::int64_t smin = 0, smax = 0;
        for (std::size_t w = 0; w < points; ++w) {
            std::int64_t s = 0;
            for (int i = 0; i < k; ++i)
                if (w & (1u << i)) s += h[static_cast<std::size_t>(i)];
            dot[w] = s;
            smin = std::min(smin, s);
            smax = std::max(smax, s);
        }
        // every factor must see an index inside the union window [lo, hi]
        for (std::int64_t n = lo - smin; n <= hi - smax; ++n) {
            cplx prod = 1.0;
            bool zero = false;
            for (std::size_t w = 0; w < points; ++w) {
                const cplx v = family[w].at(n + dot[w]);
                if (v == cplx{}) { zero = true; break; }
                prod *= (std::popcount(static_cast<unsigned>(w)) % 2 == 0) ? v : std::conj(v);
            }
            if (!zero) total += prod;
        }
        int i = 0;
        for (; i < k; ++i) {
            if (++h[static_cast<std::size_t>(i)] <= span - 1) break;
            h[static_cast<std::size_t>(i)] = -(span - 1);
        }
        if (i == k) break;
    }
    return total;
}

std::vector<SpectrumLine> u2_spectrum(const WeightedSequence& f, std::int64_t N) {
    const WeightedSequence g = truncate_to_interval(f, N);
    const std::size_t M = next_pow2(static_cast<std::size_t>(2 * N));
    std::vector<cplx> buf(M, cplx{});
    for (std::int64_t n = std::max<std::int64_t>(1, g.first()); n <= g.last(); ++n)
        buf[static_cast<std::size_t>(n) % M] = g.at(n);
    fft_forward(buf);
    std::vector<SpectrumLine> lines(M);
    for (std::size_t xi = 0; xi < M; ++xi) {
        lines[xi].bin = static_cast<std::int64_t>(xi);
        lines[xi].frequency = static_cast<double>(xi) / static_cast<double>(M);
        lines[xi].magnitude = std::abs(buf[xi]) / static_cast<double>(N);
    }
    std::stable_sort(lines.begin(), lines.end(),
                     [](const SpectrumLine& a, const SpectrumLine& b) {
                         return a.magnitude > b.magnitude;
                     });
    return lines;
}

}  // namespace aplab
