#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aplab/arith.hpp"
#include "aplab/obstructions.hpp"

namespace aplab {

/// Coefficient tables of the four-term divisor decomposition of the von
/// Mangoldt function at scale N with cuts U = floor(N^{1/3}), V = floor(N^{2/3}):
///   a_d = sum_{e f = d, e <= U, f <= U} mu(e) Lambda(f)   (support d <= V)
///   b_m = sum_{e | m, e > U} mu(e)                        (zero for m <= U)
struct VaughanTables {
    std::int64_t N = 0;
    std::int64_t U = 0;
    std::int64_t V = 0;
    std::vector<double> a;       // index d, 0..V
    std::vector<std::int32_t> b;  // index m, 0..N
};

VaughanTables vaughan_tables(std::int64_t N, const ArithTables& tables);

/// Evaluates the four terms of the decomposition at n; equals Lambda(n).
double vaughan_reconstruct(std::int64_t n, const VaughanTables& vt, const ArithTables& tables);

/// The symmetrised bilinear Type II sum
///   sum*_{r mod W} sum_{M < m1, m2 <= 2M, m_i = b r^{-1} (W)}
///     | sum_{L < l <= 2L, l = r (W)} psi((m1 l - b)/W) conj(psi((m2 l - b)/W)) |^2.
/// Nonnegative by construction.
double type_ii_bilinear(const std::function<cplx(std::int64_t)>& psi, std::int64_t W,
                        std::int64_t b, std::int64_t L, std::int64_t M);

/// An arithmetic progression start, start + step, ..., length terms.
struct Progression {
    std::int64_t start = 0;
    std::int64_t step = 1;
    std::int64_t length = 0;

    std::int64_t term(std::int64_t i) const { return start + i * step; }
    std::int64_t last() const { return term(length - 1); }
};

/// (phi(W)/W) E_{n in P} Lambda(W n + b); the Brun--Titchmarsh ratio.
double brun_titchmarsh_ratio(const WTrickParams& wtrick, const Progression& P,
                             const ArithTables& tables);

/// A partition of the W-tricked index range [1, floor((N-b)/W)] into
/// progressions of common difference q/W (q a multiple of W in the original
/// variable), each of length >= min_length; ragged tails are merged into the
/// preceding block.
struct ProgressionPartition {
    std::int64_t N = 0;
    std::int64_t W = 1;
    std::int64_t b = 1;
    std::int64_t step = 1;  // in the index variable; q/W
    std::int64_t min_length = 1;
    std::vector<Progression> pieces;
};

ProgressionPartition progression_partition(std::int64_t N, std::int64_t W, std::int64_t b,
                                           std::int64_t q, std::int64_t min_length);

struct MajorArcReport {
    double lhs = 0;  // |sum_m f(m) e(P(m))| over the index range
    double rhs = 0;  // C sum_pieces |sum_{m in piece} e(P(m))| + eta^2 N / W
    bool holds = false;
    double piece_sum = 0;
};

/// Checks |sum f . e(P)| <= C sum_P |sum_P e(P)| + eta^2 N/W on the W-tricked
/// index range; f and the partition both live in the index variable.
MajorArcReport major_arc_check(const WeightedSequence& f, const PolyPhase& psi,
                               const ProgressionPartition& partition, double C, double eta);

}  // namespace aplab
