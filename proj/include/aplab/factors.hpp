#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aplab/sequence.hpp"

namespace aplab {

/// Record of how a level-set generator was produced (kept for serialization
/// and experiment reports).
struct GeneratorRecord {
    double resolution = 0;  // K
    double shift = 0;       // t
    std::string source;     // e.g. "phase", "values", "join"
    std::vector<double> coefficients;  // phase coefficients when source == "phase"
};

/// A partition of [N]: atom_of[n-1] is the atom id of n, ids contiguous
/// 0..atom_count-1 with no empty atoms.  Immutable in practice.
struct Factor {
    std::int64_t N = 0;
    std::vector<std::int32_t> atom_of;
    std::int32_t atom_count = 0;
    std::vector<GeneratorRecord> provenance;

    std::int32_t atom(std::int64_t n) const { return atom_of[static_cast<std::size_t>(n - 1)]; }
    std::vector<std::int64_t> atom_sizes() const;
};

/// Regularity of a level-set family: the sup over radii of
/// (fraction of points with ||K h(n)||_T <= r) / (2r).  Exact boundary hits
/// (||K h(n)||_T = 0 within 1e-12) make the sup infinite.
struct RegularityReport {
    double score = 0;  // +infinity encoded as std::numeric_limits<double>::infinity()
    double argmax_radius = 0;
    std::int64_t zero_hits = 0;
};

struct ShiftSearchResult {
    bool found = false;
    double t = 0;        // first grid shift meeting the target, if found
    double score = 0;    // its score
    double best_t = 0;   // grid argmin of the score (for diagnostics / fallbacks)
    double best_score = 0;
};

/// Trivial one-atom factor on [N].
Factor trivial_factor(std::int64_t N);

/// Level sets of h at resolution K with shift t: atom of n determined by the
/// cell index j with j/K < h(n) - t <= (j+1)/K (upper-closed binning).  Empty
/// cells are discarded and ids compacted in order of first appearance.
Factor levelset_factor(const std::vector<double>& h, double K, double t,
                       GeneratorRecord provenance = {});

Factor join(const std::vector<Factor>& factors);
Factor join(const Factor& a, const Factor& b);

/// True if every atom of `fine` is contained in a single atom of `coarse`.
bool refines(const Factor& fine, const Factor& coarse);

/// Conditional expectation: constant on atoms, per-atom mean of f.
WeightedSequence cond_expect(const WeightedSequence& f, const Factor& B);

/// ||Pi_B f||_2^2 with the normalised l2 norm (mean of squared moduli).
double energy(const WeightedSequence& f, const Factor& B);

/// ||Pi_B' f||^2 - ||Pi_B f||^2 - ||Pi_B' f - Pi_B f||^2; an algebraic zero.
double pythagoras_residual(const WeightedSequence& f, const Factor& B, const Factor& B_refined);

RegularityReport regularity_score(const std::vector<double>& h, double K);

/// Probes t in {i/(mK) : 0 <= i < m} and returns the first shift whose
/// regularity score meets the target C; best grid shift always reported.
ShiftSearchResult regular_shift(const std::vector<double>& h, double K, double C, int m);

struct OmegaResult {
    std::vector<bool> mask;     // mask[n-1]: n belongs to Omega
    double excluded_mass = 0;   // E_{n in [N]} (f+1) 1_{[N] \ Omega}
    std::int64_t omega_size = 0;
};

/// Union of the atoms that are not small: an atom B is small if
/// E_{n in [N]} (f+1)(n) 1_B(n) <= eta.  Uses the real part of f.
OmegaResult small_atom_omega(const WeightedSequence& f, const Factor& B, double eta);

}  // namespace aplab
