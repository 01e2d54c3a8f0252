#pragma once

#include <cstdint>
#include <vector>

#include "aplab/arith.hpp"
#include "aplab/sequence.hpp"

namespace aplab {

enum class MajorantNormalization { Raw, EmpiricalMean };

/// Parameters of the truncated divisor-square sieve weight.
struct MajorantParams {
    std::int64_t N = 0;       // ambient scale; tables must cover it
    WTrickParams wtrick;
    double R = 0;             // sieve level, R = N^gamma
    double gamma = 0;         // recorded exponent
    MajorantNormalization normalization = MajorantNormalization::EmpiricalMean;
    bool perfect_power_term = false;  // add (log N) at perfect-power arguments
};

struct MajorantResult {
    WeightedSequence raw;
    WeightedSequence normalized;  // raw / empirical mean, so E = 1 exactly
    double raw_mean = 0;
    double prefactor = 0;  // phi(W)/W
};

/// Smooth cutoff: 1 on [-1,1], cos^2(pi(|x|-1)/2) on 1<|x|<2, 0 beyond.
/// Continuously differentiable; total derivative energy pi^2/4.
double chi_eval(double x);
inline constexpr double kChiDerivativeEnergy = 2.4674011002723395;  // pi^2/4

/// The sieve majorant nu(n) = (phi(W)/W) (log R) (sum_{d | Wn+b} mu(d)
/// chi(log d / log R))^2 on [floor((N-b)/W)], by exact squarefree divisor
/// enumeration from the factor tables.
MajorantResult gpy_majorant(const MajorantParams& params, const ArithTables& tables);

struct MajorizationReport {
    bool any_prime = false;
    double min_ratio = 0;       // min over primes Wn+b in [sqrt(N), N] of nu/(f+1)
    std::int64_t argmin_n = 0;
    std::int64_t violations = 0;  // points with nu < f + 1
    std::int64_t checked = 0;
};

MajorizationReport majorization_check(const WeightedSequence& nu, const WeightedSequence& f,
                                      const MajorantParams& params, const ArithTables& tables);

/// m affine-linear forms psi_i(n) = sum_j L[i][j] n_j + c[i] in d variables.
struct LinearFormSystem {
    std::vector<std::vector<std::int64_t>> L;  // m x d
    std::vector<std::int64_t> c;               // m

    std::size_t forms() const { return L.size(); }
    std::size_t vars() const { return L.empty() ? 0 : L[0].size(); }
    std::int64_t eval(std::size_t i, const std::vector<std::int64_t>& n) const {
        std::int64_t v = c[i];
        for (std::size_t j = 0; j < n.size(); ++j) v += L[i][j] * n[j];
        return v;
    }
};

struct ComplexityCheck {
    bool valid = false;
    int witness = 0;  // 1-based index of the first form inside the span of the others
};

/// Finite complexity: no form's linear part lies in the rational span of the
/// other forms' linear parts.  Exact fraction-free rank computation.
ComplexityCheck finite_complexity_check(const LinearFormSystem& psi);

struct LinformsEstimate {
    double estimate = 0;
    double stderr_ = 0;               // 0 in exact mode
    double out_of_domain_fraction = 0;  // form evaluations outside nu's window
    std::int64_t samples = 0;
};

/// E_{n in [Ns]^d} prod_i nu(psi_i(n)), exactly or by Monte Carlo with
/// partitioned deterministic seeding.  Out-of-domain evaluations contribute 0
/// (finite-support convention) and are counted.
LinformsEstimate linforms_exact(const WeightedSequence& nu, const LinearFormSystem& psi,
                                std::int64_t Ns);
LinformsEstimate linforms_monte_carlo(const WeightedSequence& nu, const LinearFormSystem& psi,
                                      std::int64_t Ns, std::int64_t samples, std::uint64_t seed);

/// Largest sampling scale for which every form stays inside nu's window.
std::int64_t max_scale_in_domain(const LinearFormSystem& psi, const WeightedSequence& nu);

}  // namespace aplab
