#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace aplab {

using cplx = std::complex<double>;

/// A finitely supported function on the integers: `values[i]` is the value at
/// `offset + i`, everything outside the stored window is 0.  Real-valued
/// sequences are the special case with zero imaginary parts.  This is the
/// universal carrier for weights, indicators, phases and dense models.
struct WeightedSequence {
    std::int64_t offset = 1;
    std::vector<cplx> values;

    WeightedSequence() = default;
    WeightedSequence(std::int64_t off, std::vector<cplx> vals)
        : offset(off), values(std::move(vals)) {}

    std::int64_t length() const { return static_cast<std::int64_t>(values.size()); }
    std::int64_t first() const { return offset; }
    std::int64_t last() const { return offset + length() - 1; }

    bool contains(std::int64_t n) const { return n >= first() && n <= last(); }

    cplx at(std::int64_t n) const {
        return contains(n) ? values[static_cast<std::size_t>(n - offset)] : cplx{};
    }
    cplx& ref(std::int64_t n) { return values[static_cast<std::size_t>(n - offset)]; }

    /// Sum of values (the unnormalised first moment).
    cplx sum() const;
    /// Mean over the stored window.
    cplx mean() const;
    double abs_sum() const;
    double max_abs() const;
    /// True if every imaginary part is below `tol` in magnitude.
    bool is_real(double tol = 1e-12) const;
};

/// Constant-c sequence on [1, n].
WeightedSequence const_sequence(std::int64_t n, cplx c);
/// Indicator of [1, n].
WeightedSequence ones(std::int64_t n);
/// f restricted to the interval [1, N] (the truncation f*1_[N]).
WeightedSequence truncate_to_interval(const WeightedSequence& f, std::int64_t N);

WeightedSequence conjugate(const WeightedSequence& f);
/// n -> f(-n).
WeightedSequence reflect(const WeightedSequence& f);
WeightedSequence operator+(const WeightedSequence& a, const WeightedSequence& b);
WeightedSequence operator-(const WeightedSequence& a, const WeightedSequence& b);
/// Pointwise product on the common support.
WeightedSequence pointwise(const WeightedSequence& a, const WeightedSequence& b);
WeightedSequence scale(const WeightedSequence& f, cplx c);

}  // namespace aplab
