#include "aplab/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aplab/common.hpp"

namespace aplab {

ArithTables build_tables(std::int64_t N) {
    if (N < 2) throw std::domain_error("build_tables: N must be >= 2");
    check_budget("build_tables", static_cast<double>(N));
    ArithTables t;
    t.limit = N;
    t.smallest_prime_factor.assign(static_cast<std::size_t>(N) + 1, 0);
    // Linear sieve: every n is crossed out exactly once, by its smallest prime factor.
    for (std::int64_t n = 2; n <= N; ++n) {
        if (t.smallest_prime_factor[static_cast<std::size_t>(n)] == 0) {
            t.smallest_prime_factor[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(n);
            t.primes.push_back(n);
        }
        for (std::int64_t p : t.primes) {
            if (p > t.smallest_prime_factor[static_cast<std::size_t>(n)] || n * p > N) break;
            t.smallest_prime_factor[static_cast<std::size_t>(n * p)] = static_cast<std::int32_t>(p);
        }
    }
    return t;
}

namespace {
void check_range(std::int64_t n, const ArithTables& t, const char* who) {
    if (n < 1 || n > t.limit)
        throw std::domain_error(std::string(who) + ": argument " + std::to_string(n) +
                                " outside table range [1, " + std::to_string(t.limit) + "]");
}
}  // namespace

double von_mangoldt(std::int64_t n, const ArithTables& tables) {
    check_range(n, tables, "von_mangoldt");
    if (n == 1) return 0.0;
    const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(n)];
    std::int64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

int moebius(std::int64_t n, const ArithTables& tables) {
    check_range(n, tables, "moebius");
    int k = 0;
    std::int64_t m = n;
    while (m > 1) {
        const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(m)];
        m /= p;
        if (m % p == 0) return 0;
        ++k;
    }
    return (k % 2 == 0) ? 1 : -1;
}

std::int64_t euler_phi(std::int64_t n, const ArithTables& tables) {
    check_range(n, tables, "euler_phi");
    std::int64_t phi = n;
    std::int64_t m = n;
    while (m > 1) {
        const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(m)];
        phi -= phi / p;
        while (m % p == 0) m /= p;
    }
    return phi;
}

std::uint64_t primorial(double w) {
    // Trial division is plenty here: w beyond 59 overflows 64 bits anyway.
    std::uint64_t W = 1;
    for (std::uint64_t p = 2; static_cast<double>(p) <= w; ++p) {
        bool prime = p >= 2;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime) continue;
        const unsigned __int128 next = static_cast<unsigned __int128>(W) * p;
        if (next > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("primorial: product of primes <= " + std::to_string(w) +
                                      " exceeds 64-bit range");
        W = static_cast<std::uint64_t>(next);
    }
    return W;
}

std::vector<std::int64_t> distinct_prime_factors(std::int64_t n, const ArithTables& tables) {
    check_range(n, tables, "distinct_prime_factors");
    std::vector<std::int64_t> ps;
    std::int64_t m = n;
    while (m > 1) {
        const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(m)];
        ps.push_back(p);
        while (m % p == 0) m /= p;
    }
    return ps;
}

double phi_over_w(std::uint64_t W, const ArithTables& tables) {
    if (W == 0) throw std::domain_error("phi_over_w: W must be positive");
    if (W == 1) return 1.0;
    if (static_cast<std::int64_t>(W) <= tables.limit) {
        return static_cast<double>(euler_phi(static_cast<std::int64_t>(W), tables)) /
               static_cast<double>(W);
    }
    // W beyond the table: factor by trial division (W is a primorial in practice).
    double r = 1.0;
    std::uint64_t m = W;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            r *= 1.0 - 1.0 / static_cast<double>(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) r *= 1.0 - 1.0 / static_cast<double>(m);
    return r;
}

WTrickParams make_wtrick(double w, std::uint64_t b, std::int64_t N) {
    WTrickParams p;
    p.w = w;
    p.W = primorial(w);
    p.b = b;
    p.N = N;
    if (b < 1 || b > p.W) throw std::domain_error("make_wtrick: need 1 <= b <= W");
    if (std::gcd(p.W, b) != 1) throw std::domain_error("make_wtrick: gcd(b, W) != 1");
    return p;
}

WeightedSequence wtricked_lambda(const WTrickParams& params, const ArithTables& tables) {
    if (std::gcd(params.W, params.b) != 1)
        throw std::domain_error("wtricked_lambda: gcd(b, W) != 1");
    const std::int64_t W = static_cast<std::int64_t>(params.W);
    const std::int64_t b = static_cast<std::int64_t>(params.b);
    const std::int64_t n_max = (params.N - b) / W;
    if (n_max < 1) throw std::domain_error("wtricked_lambda: empty domain");
    if (W * n_max + b > tables.limit)
        throw std::domain_error("wtricked_lambda: W*n_max + b exceeds table limit");
    const double pref = phi_over_w(params.W, tables);
    WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(n_max))};
    for (std::int64_t n = 1; n <= n_max; ++n)
        f.ref(n) = pref * von_mangoldt(W * n + b, tables);
    return f;
}

WeightedSequence restrict(const WeightedSequence& f, const std::vector<std::int64_t>& A) {
    for (std::int64_t n : A)
        if (!f.contains(n))
            throw std::domain_error("restrict: index " + std::to_string(n) +
                                    " outside the sequence domain");
    WeightedSequence g{f.offset, std::vector<cplx>(f.values.size())};
    for (std::int64_t n : A) g.ref(n) = f.at(n);
    return g;
}

}  // namespace aplab
