#include "aplab/primesums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "aplab/common.hpp"

namespace aplab {

namespace {
std::int64_t integer_root(std::int64_t n, int k) {
    // floor(n^{1/k}): double estimate corrected by exact 128-bit comparisons
    auto pw = [&](std::int64_t x) {
        __int128 v = 1;
        for (int i = 0; i < k; ++i) v *= x;
        return v;
    };
    std::int64_t r = static_cast<std::int64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    r = std::max<std::int64_t>(r, 1);
    while (pw(r + 1) <= n) ++r;
    while (r > 1 && pw(r) > n) --r;
    return r;
}
}  // namespace

VaughanTables vaughan_tables(std::int64_t N, const ArithTables& tables) {
    if (N > tables.limit) throw std::domain_error("vaughan_tables: N exceeds table limit");
    VaughanTables vt;
    vt.N = N;
    vt.U = integer_root(N, 3);
    const std::int64_t U2 = vt.U * vt.U;
    vt.V = integer_root(N * N, 3);
    // The identity needs a supported up to U^2; both cuts are recorded.
    const std::int64_t amax = std::max(vt.V, U2);
    vt.a.assign(static_cast<std::size_t>(amax) + 1, 0.0);
    for (std::int64_t e = 1; e <= vt.U; ++e) {
        const int mu = moebius(e, tables);
        if (mu == 0) continue;
        for (std::int64_t f = 1; f <= vt.U && e * f <= amax; ++f) {
            const double lam = von_mangoldt(f, tables);
            if (lam != 0.0) vt.a[static_cast<std::size_t>(e * f)] += mu * lam;
        }
    }
    vt.b.assign(static_cast<std::size_t>(N) + 1, 0);
    for (std::int64_t e = vt.U + 1; e <= N; ++e) {
        const int mu = moebius(e, tables);
        if (mu == 0) continue;
        for (std::int64_t m = e; m <= N; m += e) vt.b[static_cast<std::size_t>(m)] += mu;
    }
    return vt;
}

double vaughan_reconstruct(std::int64_t n, const VaughanTables& vt, const ArithTables& tables) {
    if (n < 1 || n > vt.N) throw std::domain_error("vaughan_reconstruct: n out of range");
    double total = 0;
    if (n <= vt.U) total += von_mangoldt(n, tables);
    // divisors of n once, shared by the next two terms
    std::vector<std::int64_t> divs{1};
    {
        std::int64_t m = n;
        while (m > 1) {
            const std::int64_t p = tables.smallest_prime_factor[static_cast<std::size_t>(m)];
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            const std::size_t old = divs.size();
            std::int64_t pe = 1;
            for (int i = 1; i <= e; ++i) {
                pe *= p;
                for (std::size_t j = 0; j < old; ++j) divs.push_back(divs[j] * pe);
            }
        }
    }
    for (std::int64_t d : divs) {
        if (d <= vt.V) total -= vt.a[static_cast<std::size_t>(d)];
        if (d <= vt.U) {
            const int mu = moebius(d, tables);
            if (mu != 0)
                total += mu * std::log(static_cast<double>(n) / static_cast<double>(d));
        }
        // fourth term: n = d * m with d > U carrying Lambda, m carrying b
        if (d > vt.U) {
            const double lam = von_mangoldt(d, tables);
            if (lam != 0.0) total += lam * vt.b[static_cast<std::size_t>(n / d)];
        }
    }
    return total;
}

double type_ii_bilinear(const std::function<cplx(std::int64_t)>& psi, std::int64_t W,
                        std::int64_t b, std::int64_t L, std::int64_t M) {
    if (W < 1 || b < 1 || b > W) throw std::domain_error("type_ii_bilinear: need 1 <= b <= W");
    if (std::gcd(b, W) != 1) throw std::domain_error("type_ii_bilinear: gcd(b, W) != 1");
    const double mw = static_cast<double>(M) / W + 1;
    const double lw = static_cast<double>(L) / W + 1;
    check_budget("type_ii_bilinear", static_cast<double>(W) * mw * mw * lw);

    double total = 0;
    for (std::int64_t r = 1; r <= W; ++r) {
        if (std::gcd(r, W) != 1) continue;
        // residue of the m's: m = b r^{-1} mod W
        std::int64_t rinv = 0;
        for (std::int64_t x = 1; x <= W; ++x)
            if ((r * x) % W == 1 % W) { rinv = x; break; }
        const std::int64_t mres = (b % W) * rinv % W;

        std::vector<std::int64_t> ls;
        for (std::int64_t l = L + 1; l <= 2 * L; ++l)
            if (l % W == r % W) ls.push_back(l);
        std::vector<std::int64_t> ms;
        for (std::int64_t m = M + 1; m <= 2 * M; ++m)
            if (m % W == mres % W) ms.push_back(m);

        // cache psi((m l - b)/W) per (m, l)
        std::vector<std::vector<cplx>> vals(ms.size(), std::vector<cplx>(ls.size()));
        for (std::size_t i = 0; i < ms.size(); ++i)
            for (std::size_t j = 0; j < ls.size(); ++j)
                vals[i][j] = psi((ms[i] * ls[j] - b) / W);

        for (std::size_t i1 = 0; i1 < ms.size(); ++i1)
            for (std::size_t i2 = 0; i2 < ms.size(); ++i2) {
                cplx inner{};
                for (std::size_t j = 0; j < ls.size(); ++j)
                    inner += vals[i1][j] * std::conj(vals[i2][j]);
                total += std::norm(inner);
            }
    }
    return total;
}

double brun_titchmarsh_ratio(const WTrickParams& wtrick, const Progression& P,
                             const ArithTables& tables) {
    if (P.length < 1) throw std::domain_error("brun_titchmarsh_ratio: empty progression");
    const std::int64_t W = static_cast<std::int64_t>(wtrick.W);
    const std::int64_t b = static_cast<std::int64_t>(wtrick.b);
    const std::int64_t n_max = (wtrick.N - b) / W;
    if (P.start < 1 || P.last() > n_max)
        throw std::domain_error("brun_titchmarsh_ratio: progression leaves the index range");
    const double pref = phi_over_w(wtrick.W, tables);
    double s = 0;
    for (std::int64_t i = 0; i < P.length; ++i) s += von_mangoldt(W * P.term(i) + b, tables);
    return pref * s / static_cast<double>(P.length);
}

ProgressionPartition progression_partition(std::int64_t N, std::int64_t W, std::int64_t b,
                                           std::int64_t q, std::int64_t min_length) {
    if (W < 1 || q < W || q % W != 0)
        throw std::domain_error("progression_partition: q must be a positive multiple of W");
    if (min_length < 1) throw std::domain_error("progression_partition: min_length must be >= 1");
    const std::int64_t X = (N - b) / W;  // class size in the index variable
    if (X < 1) throw std::domain_error("progression_partition: empty residue class");
    const std::int64_t step = q / W;

    ProgressionPartition part;
    part.N = N;
    part.W = W;
    part.b = b;
    part.step = step;
    part.min_length = min_length;
    for (std::int64_t r = 1; r <= std::min(step, X); ++r) {
        const std::int64_t len = (X - r) / step + 1;  // indices r, r+step, ... <= X
        if (len < min_length)
            throw std::domain_error(
                "progression_partition: min_length infeasible for this step (subclass of length " +
                std::to_string(len) + ")");
        // chop into blocks of min_length; the ragged tail joins the last block
        const std::int64_t blocks = len / min_length;
        std::int64_t used = 0;
        for (std::int64_t bl = 0; bl < blocks; ++bl) {
            const std::int64_t take = (bl + 1 == blocks) ? len - used : min_length;
            part.pieces.push_back({r + used * step, step, take});
            used += take;
        }
    }
    return part;
}

MajorArcReport major_arc_check(const WeightedSequence& f, const PolyPhase& psi,
                               const ProgressionPartition& partition, double C, double eta) {
    MajorArcReport rep;
    cplx lhs{};
    for (std::int64_t m = f.first(); m <= f.last(); ++m) lhs += f.at(m) * phase_eval(psi, m);
    rep.lhs = std::abs(lhs);
    double pieces = 0;
    for (const Progression& P : partition.pieces) {
        cplx s{};
        for (std::int64_t i = 0; i < P.length; ++i) s += phase_eval(psi, P.term(i));
        pieces += std::abs(s);
    }
    rep.piece_sum = pieces;
    rep.rhs = C * pieces + eta * eta * static_cast<double>(partition.N) /
                               static_cast<double>(partition.W);
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

}  // namespace aplab
