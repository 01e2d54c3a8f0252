#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aplab/sequence.hpp"

namespace aplab {

/// Real-coefficient polynomial P defining the unit-modulus phase sequence
/// n -> e(P(n)), e(x) = exp(2 pi i x).
struct PolyPhase {
    std::vector<double> coefficients;  // c0, c1, ..., c_s
    std::int64_t domain_scale = 0;

    int degree() const {
        return coefficients.empty() ? 0 : static_cast<int>(coefficients.size()) - 1;
    }
};

/// A correlation witness: |E_{n in [N]} f(n) conj(e(P(n)))|.
struct Correlation {
    PolyPhase phase;
    cplx value{};
    double magnitude = 0;
};

struct InverseSearchConfig {
    std::int64_t c2_grid = 4096;  // grid points for c2 over [0, 1)
    int refine_rounds = 3;        // coordinatewise hill-climb rounds
    int golden_iters = 40;        // golden-section iterations per coordinate pass
    double threshold = 0.1;       // theta: minimum accepted correlation magnitude
};

/// e(P(n)); P is evaluated by Horner with mod-1 reduction after every step so
/// large n do not wash out the fractional part.
cplx phase_eval(const PolyPhase& P, std::int64_t n);

/// P(n) mod 1 in [0, 1): the real-valued obstruction handed to level-set
/// factors.
double phase_mod1(const PolyPhase& P, std::int64_t n);

/// Sequence of e(P(n)) for n in [1, N].
WeightedSequence phase_sequence(const PolyPhase& P, std::int64_t N);

/// Exponents add; degree is the max of the degrees.
PolyPhase phase_product(const std::vector<PolyPhase>& phases);

/// E_{n in [N]} f(n) conj(e(P(n))).
cplx phase_correlation(const WeightedSequence& f, const PolyPhase& P, std::int64_t N);

/// Best linear phase by padded DFT plus one local golden-section refinement.
/// The returned magnitude is never below the best DFT-bin correlation.
Correlation u2_inverse(const WeightedSequence& f, std::int64_t N);

/// Degree-s polynomial phase search (s in {1,2}).  s=1 delegates to
/// u2_inverse; s=2 scans c2 over a grid, runs the spectral linear step on the
/// demodulated sequence, then hill-climbs (c2, c1).  Returns nothing when the
/// best magnitude stays below config.threshold — callers must treat not-found
/// as a first-class outcome.
std::optional<Correlation> poly_inverse_search(const WeightedSequence& f, std::int64_t N, int s,
                                               const InverseSearchConfig& config);

}  // namespace aplab
