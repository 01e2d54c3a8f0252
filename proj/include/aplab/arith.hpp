#pragma once

#include <cstdint>
#include <vector>

#include "aplab/sequence.hpp"

namespace aplab {

/// Smallest-prime-factor tables up to a fixed limit.  Single source of truth
/// for the von Mangoldt, Moebius and Euler-phi evaluations.  Immutable after
/// construction and safe for concurrent reads.
struct ArithTables {
    std::int64_t limit = 0;
    std::vector<std::int32_t> smallest_prime_factor;  // index n, valid for 2 <= n <= limit
    std::vector<std::int64_t> primes;

    bool is_prime(std::int64_t n) const {
        return n >= 2 && smallest_prime_factor[static_cast<std::size_t>(n)] == n;
    }
};

/// W-trick parameters: W = product of primes <= w, residue b coprime to W,
/// ambient scale N.
struct WTrickParams {
    double w = 0;
    std::uint64_t W = 1;
    std::uint64_t b = 1;
    std::int64_t N = 0;
};

ArithTables build_tables(std::int64_t N);

/// log p if n = p^j, else 0.
double von_mangoldt(std::int64_t n, const ArithTables& tables);
int moebius(std::int64_t n, const ArithTables& tables);
/// Euler phi via the factorisation tables.
std::int64_t euler_phi(std::int64_t n, const ArithTables& tables);

/// Product of all primes <= w; empty product is 1.  Throws std::overflow_error
/// instead of wrapping (64-bit result, checked via 128-bit multiply; overflows
/// first at w >= 59).
std::uint64_t primorial(double w);

/// Distinct prime factors of n, ascending.
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n, const ArithTables& tables);

/// phi(W)/W computed exactly from the factorisation of W.
double phi_over_w(std::uint64_t W, const ArithTables& tables);

WTrickParams make_wtrick(double w, std::uint64_t b, std::int64_t N);

/// The W-tricked von Mangoldt weight on [floor((N-b)/W)]:
/// n -> (phi(W)/W) * Lambda(W n + b).
WeightedSequence wtricked_lambda(const WTrickParams& params, const ArithTables& tables);

/// Pointwise product with the indicator of A (indices within f's window).
WeightedSequence restrict(const WeightedSequence& f, const std::vector<std::int64_t>& A);

}  // namespace aplab
