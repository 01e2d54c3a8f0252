#pragma once

#include <cstdint>
#include <vector>

#include "aplab/sequence.hpp"

namespace aplab {

/// Result of a uniformity-norm computation.  `power_value` is the 2^k-th
/// power of the norm; tiny negative powers (|.| <= 1e-9 * scale) are clamped
/// to 0 before the root, larger negativity is an internal error.
struct GowersValue {
    int k = 1;
    double power_value = 0;
    double root_value = 0;
    bool normalized = false;  // true for interval norms
};

enum class NormStrategy {
    Auto,         // recursion with FFT base
    Enumeration,  // direct sum over all (n, h-vector) tuples
    Recursion,    // power_k(f) = sum_h power_{k-1}(diff(f, h))
};

/// Multiplicative difference: (diff_h f)(n) = conj(f(n+h)) * f(n).
WeightedSequence difference(const WeightedSequence& f, std::int64_t h);

/// Unnormalised uniformity norm of order k over the integers.
GowersValue unnormalized_norm(const WeightedSequence& f, int k,
                              NormStrategy strategy = NormStrategy::Auto);

/// Interval norm: f truncated to [N], divided by the norm of the interval
/// indicator.  Never computed through a cyclic group.
GowersValue interval_norm(const WeightedSequence& f, std::int64_t N, int k,
                          NormStrategy strategy = NormStrategy::Auto);

/// The 2^k-linear form sum_{x, h} prod_w C^{|w|} f_w(x + w.h) over a family
/// indexed by w in {0,1}^k (family.size() == 2^k, index bit i of w = h_{i+1}
/// participation).  Bounded by the product of the factors' unnormalised
/// norms.
cplx gcs_form(const std::vector<WeightedSequence>& family, int k);

/// One spectrum line: frequency xi/M and magnitude |E_{n in [N]} f(n) e(-xi n/M)|.
struct SpectrumLine {
    std::int64_t bin = 0;
    double frequency = 0;
    double magnitude = 0;
};

/// Padded discrete spectrum of f*1_[N] over Z/M, M = smallest power of two
/// >= 2N, sorted by descending magnitude.
std::vector<SpectrumLine> u2_spectrum(const WeightedSequence& f, std::int64_t N);

}  // namespace aplab
