#pragma once

#include <cstdint>
#include <vector>

#include "aplab/sequence.hpp"

namespace aplab {

/// Progression pattern x + c_1 d, ..., x + c_k d with distinct integer
/// coefficients; c is the coefficient spread max |c_i - c_j|.
struct APPattern {
    std::vector<std::int64_t> coefficients;

    int k() const { return static_cast<int>(coefficients.size()); }
    std::int64_t spread() const;

    /// 0, 1, ..., k-1.
    static APPattern arithmetic(int k);
};

/// N^{-1} sum_{x in Z} E_{d in [N]} prod_i f_i(x + c_i d); d runs over
/// 1..N so trivial progressions never contribute, x over the exact feasible
/// window of the supports.
cplx ap_average(const std::vector<WeightedSequence>& fs, const APPattern& pattern,
                std::int64_t N);

/// Number of pairs (x, d), d >= 1, with x, x+d, ..., x+(k-1)d all in A.
std::int64_t ap_count_exact(const std::vector<std::int64_t>& A, int k);

struct VonNeumannReport {
    double t_f = 0;                       // real part of the f-average
    double t_g = 0;
    double gap = 0;                       // |T(f) - T(g)|
    std::vector<double> distances;        // ||f_i - g_i||_{U^{k-1}[cN]}
    double max_distance = 0;
    double ratio = 0;                     // gap / max distance, guarded
    bool ratio_defined = false;
};

/// Measures the generalised von Neumann inequality: both multilinear
/// averages, the U^{k-1}[cN] distances, and the empirical gap/distance ratio.
/// Inputs must be nu-bounded (validated pointwise).
VonNeumannReport von_neumann_gap(const std::vector<WeightedSequence>& fs,
                                 const std::vector<WeightedSequence>& gs,
                                 const WeightedSequence& nu, const APPattern& pattern,
                                 std::int64_t N);

struct VarnavidesResult {
    double density = 0;     // E_{n in [N]} g(n)
    double ap_average = 0;  // E_{n,d in [N]} g(n) g(n+d) ... g(n+(k-1)d)
};

/// Density/count experiment for [0,1]-valued g on [kN].
VarnavidesResult varnavides_experiment(const WeightedSequence& g, int k, std::int64_t N);

}  // namespace aplab
