#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aplab/common.hpp"
#include "aplab/factors.hpp"
#include "aplab/obstructions.hpp"
#include "aplab/sequence.hpp"

namespace aplab {

enum class ClampMode { Report, Clamp };
enum class DenseModelOutcome { Success, OracleFailure, IterationCap, EnergyCap };

struct DenseModelConfig {
    int k = 2;                 // uniformity order for the stopping rule
    double epsilon = 0.05;     // target residual norm
    double K = 8;              // level-set resolution
    double eta = 1e-3;         // small-atom threshold
    double regularity_C = 16;  // regular-shift target
    int shift_grid = 64;       // regular-shift probe count
    int max_iterations = 20;   // J
    double theta = 0.1;        // oracle acceptance threshold
    double energy_cap = 10;    // stop when ||Pi_B f||_2^2 exceeds this
    ClampMode clamp_mode = ClampMode::Report;
    InverseSearchConfig oracle;  // threshold is overridden by theta
};

struct DenseModelIteration {
    int iteration = 0;
    double residual_norm = 0;  // ||(f - Pi_B f) 1_Omega||_{U^k[N]} before refining
    bool phase_found = false;
    std::vector<double> phase_coefficients;
    double correlation = 0;
    double shift = 0;
    double regularity = 0;
    bool regularity_met = false;
    double energy_before = 0;
    double energy_after = 0;
    std::int32_t atoms_after = 0;
    std::int64_t omega_size = 0;
    double excluded_mass = 0;
};

struct DenseModelResult {
    DenseModelOutcome outcome = DenseModelOutcome::IterationCap;
    WeightedSequence g;       // Pi_B f restricted to Omega (clamped per config)
    Factor factor;
    std::vector<bool> omega;
    double residual_norm = 0;
    double excluded_mass = 0;
    std::int64_t clamp_violations = 0;  // points with Pi_B f outside [0, 2] on Omega
    int refinements = 0;
    std::vector<DenseModelIteration> trace;
};

/// Thrown when an inner norm or oracle call exceeds the operation budget; the
/// run so far is preserved in `partial`.
class dense_model_budget_error : public budget_error {
public:
    dense_model_budget_error(const budget_error& e, DenseModelResult partial_result)
        : budget_error(e), partial(std::move(partial_result)) {}
    DenseModelResult partial;
};

/// Energy-increment loop: refine a level-set factor by phases found on the
/// windowed residual until its U^k norm drops below epsilon.  Requires
/// 0 <= f <= nu pointwise on a common domain [N].
DenseModelResult dense_model(const WeightedSequence& f, const WeightedSequence& nu,
                             const DenseModelConfig& cfg);

struct ModelQuality {
    double distance = 0;      // ||f - g||_{U^k[N]}, recomputed from scratch
    double residual_norm = 0; // ||(f - Pi_B f) 1_Omega||_{U^k[N]}, recomputed
    double mean_g = 0;
    double max_g = 0;
    double excluded_mass = 0; // E (f+1) 1_{[N] \ Omega}, recomputed
};

/// Recomputes every reported quantity independently of the run's trace.
ModelQuality model_quality(const WeightedSequence& f, const DenseModelResult& result, int k);

const char* to_string(DenseModelOutcome o);

}  // namespace aplab
