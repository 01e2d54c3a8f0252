#include "aplab/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "aplab/common.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

double chi_eval(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double c = std::cos(std::numbers::pi * (a - 1.0) / 2.0);
    return c * c;
}

namespace {

bool is_perfect_power(std::int64_t n, const ArithTables& tables) {
    if (n < 4) return false;
    // gcd of the exponents in the factorisation >= 2
    std::int64_t m = n;
    int g = 0;
    while (m > 1) {
        const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(m)];
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        g = g == 0 ? e : std::gcd(g, e);
        if (g == 1) return false;
    }
    return g >= 2;
}

// sum over squarefree d | m with chi support d < R^2 of mu(d) chi(log d / log R)
double divisor_chi_sum(std::int64_t m, double R, const ArithTables& tables) {
    const double logR = std::log(R);
    const double R2 = R * R;
    const auto ps = distinct_prime_factors(m, tables);
    const std::size_t k = ps.size();
    double sum = 0;
    for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << k); ++mask) {
        double d = 1;
        int bits = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (static_cast<std::size_t>(1) << i)) {
                d *= static_cast<double>(ps[i]);
                ++bits;
                if (d >= R2) break;
            }
        if (d >= R2) continue;
        const double chi = chi_eval(std::log(d) / logR);
        sum += (bits % 2 == 0) ? chi : -chi;
    }
    return sum;
}

}  // namespace

MajorantResult gpy_majorant(const MajorantParams& params, const ArithTables& tables) {
    if (params.R <= 1.0) throw std::domain_error("gpy_majorant: need R > 1");
    if (params.R * params.R > static_cast<double>(params.N) + 0.5)
        throw std::domain_error("gpy_majorant: need R^2 <= N so divisor sums stay in-table");
    const std::int64_t W = static_cast<std::int64_t>(params.wtrick.W);
    const std::int64_t b = static_cast<std::int64_t>(params.wtrick.b);
    const std::int64_t n_max = (params.N - b) / W;
    if (n_max < 1) throw std::domain_error("gpy_majorant: empty domain");
    if (W * n_max + b > tables.limit)
        throw budget_error("gpy_majorant: table limit too small", W * n_max + b, tables.limit);

    const double pref = phi_over_w(params.wtrick.W, tables);
    const double logR = std::log(params.R);
    const double logN = std::log(static_cast<double>(params.N));

    MajorantResult out;
    out.prefactor = pref;
    out.raw.offset = 1;
    chunked_map<cplx>(n_max, out.raw.values, [&](std::int64_t i) {
        const std::int64_t m = W * (i + 1) + b;
        const double s = divisor_chi_sum(m, params.R, tables);
        double v = pref * logR * s * s;
        if (params.perfect_power_term && is_perfect_power(m, tables)) v += logN;
        return cplx{v, 0.0};
    });

    const double mean = out.raw.mean().real();
    out.raw_mean = mean;
    out.normalized = out.raw;
    if (mean > 0)
        for (cplx& v : out.normalized.values) v /= mean;
    return out;
}

MajorizationReport majorization_check(const WeightedSequence& nu, const WeightedSequence& f,
                                      const MajorantParams& params, const ArithTables& tables) {
    const std::int64_t W = static_cast<std::int64_t>(params.wtrick.W);
    const std::int64_t b = static_cast<std::int64_t>(params.wtrick.b);
    const double lo = std::sqrt(static_cast<double>(params.N));
    MajorizationReport rep;
    for (std::int64_t n = nu.first(); n <= nu.last(); ++n) {
        const std::int64_t m = W * n + b;
        if (static_cast<double>(m) < lo || m > params.N || m > tables.limit) continue;
        if (!tables.is_prime(m)) continue;
        const double ratio = nu.at(n).real() / (f.at(n).real() + 1.0);
        ++rep.checked;
        if (!rep.any_prime || ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.argmin_n = n;
        }
        rep.any_prime = true;
        if (nu.at(n).real() < f.at(n).real() + 1.0) ++rep.violations;
    }
    return rep;
}

namespace {

// Fraction-free (Bareiss) rank over the rationals.  Coefficients are small
// integers, so __int128 intermediates are exact at desk scale.
int integer_rank(std::vector<std::vector<__int128>> a) {
    const std::size_t rows = a.size();
    if (rows == 0) return 0;
    const std::size_t cols = a[0].size();
    __int128 prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace

ComplexityCheck finite_complexity_check(const LinearFormSystem& psi) {
    const std::size_t m = psi.forms();
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<std::vector<__int128>> others;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            others.emplace_back(psi.L[j].begin(), psi.L[j].end());
        }
        const int rank_others = integer_rank(others);
        others.emplace_back(psi.L[i].begin(), psi.L[i].end());
        const int rank_with = integer_rank(others);
        if (rank_with == rank_others) return {false, static_cast<int>(i) + 1};
    }
    return {true, 0};
}

namespace {

struct Accum {
    double sum = 0;
    double sumsq = 0;
    std::int64_t out_of_domain = 0;
    std::int64_t evals = 0;
};

double product_at(const WeightedSequence& nu, const LinearFormSystem& psi,
                  const std::vector<std::int64_t>& n, Accum& acc) {
    double prod = 1.0;
    for (std::size_t i = 0; i < psi.forms(); ++i) {
        const std::int64_t v = psi.eval(i, n);
        ++acc.evals;
        if (!nu.contains(v)) {
            ++acc.out_of_domain;
            return 0.0;
        }
        prod *= nu.at(v).real();
    }
    return prod;
}

}  // namespace

LinformsEstimate linforms_exact(const WeightedSequence& nu, const LinearFormSystem& psi,
                                std::int64_t Ns) {
    const auto check = finite_complexity_check(psi);
    if (!check.valid)
        throw std::domain_error("linforms_exact: system fails finite complexity at form " +
                                std::to_string(check.witness));
    const std::size_t d = psi.vars();
    double tuples = 1;
    for (std::size_t j = 0; j < d; ++j) tuples *= static_cast<double>(Ns);
    check_budget("linforms_exact", tuples * static_cast<double>(psi.forms()));

    Accum acc;
    std::vector<std::int64_t> n(d, 1);
    double total = 0;
    std::int64_t count = 0;
    for (;;) {
        total += product_at(nu, psi, n, acc);
        ++count;
        std::size_t j = 0;
        for (; j < d; ++j) {
            if (++n[j] <= Ns) break;
            n[j] = 1;
        }
        if (j == d) break;
    }
    LinformsEstimate est;
    est.estimate = total / static_cast<double>(count);
    est.stderr_ = 0;
    est.out_of_domain_fraction =
        static_cast<double>(acc.out_of_domain) / static_cast<double>(acc.evals);
    est.samples = count;
    return est;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace

LinformsEstimate linforms_monte_carlo(const WeightedSequence& nu, const LinearFormSystem& psi,
                                      std::int64_t Ns, std::int64_t samples, std::uint64_t seed) {
    const auto check = finite_complexity_check(psi);
    if (!check.valid)
        throw std::domain_error("linforms_monte_carlo: system fails finite complexity at form " +
                                std::to_string(check.witness));
    if (samples < 2) throw std::domain_error("linforms_monte_carlo: need at least 2 samples");
    const std::size_t d = psi.vars();

    // One master seed; per-stream generators derived by hashing the stream
    // index, and stream partials combined in index order.  Reproducible for
    // any thread count.
    constexpr std::int64_t kStreams = 64;
    const std::int64_t per = samples / kStreams;
    const std::int64_t extra = samples % kStreams;  // first `extra` streams take one more
    std::vector<Accum> partial;
    chunked_map<Accum>(kStreams, partial, [&](std::int64_t s) {
        std::mt19937_64 rng(splitmix64(seed ^ (0xabcdef1234567890ULL + static_cast<std::uint64_t>(s))));
        std::uniform_int_distribution<std::int64_t> uni(1, Ns);
        Accum acc;
        std::vector<std::int64_t> n(d);
        const std::int64_t mine = per + (s < extra ? 1 : 0);
        for (std::int64_t i = 0; i < mine; ++i) {
            for (std::size_t j = 0; j < d; ++j) n[j] = uni(rng);
            const double x = product_at(nu, psi, n, acc);
            acc.sum += x;
            acc.sumsq += x * x;
        }
        return acc;
    });

    Accum total;
    for (const Accum& a : partial) {
        total.sum += a.sum;
        total.sumsq += a.sumsq;
        total.out_of_domain += a.out_of_domain;
        total.evals += a.evals;
    }
    const double S = static_cast<double>(samples);
    LinformsEstimate est;
    est.estimate = total.sum / S;
    const double var = std::max(0.0, (total.sumsq - S * est.estimate * est.estimate) / (S - 1.0));
    est.stderr_ = std::sqrt(var / S);
    est.out_of_domain_fraction =
        total.evals > 0 ? static_cast<double>(total.out_of_domain) / static_cast<double>(total.evals)
                        : 0.0;
    est.samples = samples;
    return est;
}

std::int64_t max_scale_in_domain(const LinearFormSystem& psi, const WeightedSequence& nu) {
    // Largest Ns with psi_i([1,Ns]^d) inside [nu.first, nu.last] for all i.
    std::int64_t best = nu.last();
    for (std::size_t i = 0; i < psi.forms(); ++i) {
        std::int64_t pos = 0, neg = 0;
        for (std::int64_t l : psi.L[i]) (l > 0 ? pos : neg) += std::abs(l);
        // upper: pos*Ns + c <= last ; lower: -neg*Ns + c >= first
        if (pos > 0) best = std::min(best, (nu.last() - psi.c[i]) / pos);
        if (neg > 0) best = std::min(best, (psi.c[i] - nu.first()) / neg);
        // forms with pos == 0 must still start inside
        if (pos == 0 && (psi.c[i] > nu.last() || psi.c[i] - neg < nu.first())) best = 0;
    }
    return std::max<std::int64_t>(best, 0);
}

}  // namespace aplab
