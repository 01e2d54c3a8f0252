#include "aplab/obstructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aplab/common.hpp"
#include "aplab/fft.hpp"
#include "aplab/gowers.hpp"
#include "aplab/parallel.hpp"

namespace aplab {

namespace {
double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guard against floor rounding at the boundary
    return f;
}
}  // namespace

double phase_mod1(const PolyPhase& P, std::int64_t n) {
    // Per-monomial reduction: n^j is an exact double while below 2^53, and the
    // FMA residual recovers what the product c * n^j rounds away, so each term
    // is reduced mod 1 to a few ulp.  Plain Horner would amplify rounding by
    // n per step and lose the fractional part entirely for large n.
    double acc = 0.0;
    double power = 1.0;
    for (double c : P.coefficients) {
        const double hi = c * power;
        const double lo = std::fma(c, power, -hi);
        acc = frac(acc + frac(hi - std::floor(hi) + lo));
        power *= static_cast<double>(n);
    }
    return acc;
}

cplx phase_eval(const PolyPhase& P, std::int64_t n) {
    const double t = 2.0 * std::numbers::pi * phase_mod1(P, n);
    return {std::cos(t), std::sin(t)};
}

WeightedSequence phase_sequence(const PolyPhase& P, std::int64_t N) {
    WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(N))};
    for (std::int64_t n = 1; n <= N; ++n) f.ref(n) = phase_eval(P, n);
    return f;
}

PolyPhase phase_product(const std::vector<PolyPhase>& phases) {
    PolyPhase out;
    for (const PolyPhase& p : phases) {
        out.domain_scale = std::max(out.domain_scale, p.domain_scale);
        if (p.coefficients.size() > out.coefficients.size())
            out.coefficients.resize(p.coefficients.size(), 0.0);
        for (std::size_t i = 0; i < p.coefficients.size(); ++i)
            out.coefficients[i] += p.coefficients[i];
    }
    return out;
}

cplx phase_correlation(const WeightedSequence& f, const PolyPhase& P, std::int64_t N) {
    cplx s{};
    const std::int64_t lo = std::max<std::int64_t>(1, f.first());
    const std::int64_t hi = std::min<std::int64_t>(N, f.last());
    for (std::int64_t n = lo; n <= hi; ++n) s += f.at(n) * std::conj(phase_eval(P, n));
    return s / static_cast<double>(N);
}

namespace {

double linear_correlation_mag(const WeightedSequence& f, std::int64_t N, double beta) {
    PolyPhase p{{0.0, beta}, N};
    return std::abs(phase_correlation(f, p, N));
}

// Golden-section maximisation of fn over [a, b] with a fixed iteration count;
// deterministic, no tolerance-based early exit.
template <class Fn>
double golden_max(double a, double b, int iters, Fn&& fn) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        }
    }
    return f1 >= f2 ? x1 : x2;
}

}  // namespace

Correlation u2_inverse(const WeightedSequence& f, std::int64_t N) {
    const auto spectrum = u2_spectrum(f, N);
    const SpectrumLine best_bin = spectrum.front();
    const double M = static_cast<double>(next_pow2(static_cast<std::size_t>(2 * N)));

    const WeightedSequence g = truncate_to_interval(f, N);
    const double beta0 = best_bin.frequency;
    const double beta = golden_max(beta0 - 1.0 / M, beta0 + 1.0 / M, 40, [&](double b) {
        return linear_correlation_mag(g, N, b);
    });

    // Keep the refinement only when it actually improves on the bin.
    const double refined = linear_correlation_mag(g, N, beta);
    const double chosen = refined >= best_bin.magnitude ? beta : beta0;

    Correlation c;
    c.phase = PolyPhase{{0.0, chosen}, N};
    c.value = phase_correlation(g, c.phase, N);
    c.magnitude = std::abs(c.value);
    return c;
}

namespace {

// Magnitude of the best padded-DFT bin of f(n) conj(e(c2 n^2)); the linear
// step of the quadratic scan.
double best_bin_after_demod(const WeightedSequence& g, std::int64_t N, double c2,
                            std::vector<cplx>& buf) {
    const std::size_t M = buf.size();
    std::fill(buf.begin(), buf.end(), cplx{});
    PolyPhase q{{0.0, 0.0, c2}, N};
    for (std::int64_t n = std::max<std::int64_t>(1, g.first()); n <= std::min(N, g.last()); ++n)
        buf[static_cast<std::size_t>(n) % M] = g.at(n) * std::conj(phase_eval(q, n));
    fft_forward(buf);
    double best = 0;
    for (const cplx& z : buf) best = std::max(best, std::abs(z));
    return best / static_cast<double>(N);
}

double quad_correlation_mag(const WeightedSequence& g, std::int64_t N, double c2, double c1) {
    PolyPhase p{{0.0, c1, c2}, N};
    return std::abs(phase_correlation(g, p, N));
}

}  // namespace

std::optional<Correlation> poly_inverse_search(const WeightedSequence& f, std::int64_t N, int s,
                                               const InverseSearchConfig& config) {
    if (s < 1 || s > 2) throw std::domain_error("poly_inverse_search: degree must be 1 or 2");
    if (s == 1) {
        Correlation c = u2_inverse(f, N);
        if (c.magnitude >= config.threshold) return c;
        return std::nullopt;
    }

    const WeightedSequence g = truncate_to_interval(f, N);
    const std::size_t M = next_pow2(static_cast<std::size_t>(2 * N));
    const std::int64_t G = config.c2_grid;
    // Scan cost: one demodulation + FFT per grid point.
    check_budget("poly_inverse_search",
                 static_cast<double>(G) *
                     (static_cast<double>(N) + 5.0 * static_cast<double>(M) *
                                                   std::log2(static_cast<double>(M))));

    // e(c2 n^2) is 1-periodic in c2, so [0, 1) covers every quadratic phase.
    // Deterministic argmax: scan in index order, strict improvement only.
    std::vector<double> mags;
    chunked_map<double>(G, mags, [&](std::int64_t i) {
        thread_local std::vector<cplx> buf;
        if (buf.size() != M) buf.assign(M, cplx{});
        const double c2 = static_cast<double>(i) / static_cast<double>(G);
        return best_bin_after_demod(g, N, c2, buf);
    });
    std::int64_t best_i = 0;
    for (std::int64_t i = 1; i < G; ++i)
        if (mags[static_cast<std::size_t>(i)] > mags[static_cast<std::size_t>(best_i)]) best_i = i;

    double c2 = static_cast<double>(best_i) / static_cast<double>(G);
    PolyPhase q{{0.0, 0.0, c2}, N};
    WeightedSequence demod = g;
    for (std::int64_t n = std::max<std::int64_t>(1, g.first()); n <= std::min(N, g.last()); ++n)
        demod.ref(n) = g.at(n) * std::conj(phase_eval(q, n));
    double c1 = u2_inverse(demod, N).phase.coefficients[1];

    // Coordinatewise hill-climb with fixed iteration counts; a pass is kept
    // only when it improves the objective, so the climb is monotone.
    const double step2 = 1.0 / static_cast<double>(G);
    const double step1 = 1.0 / static_cast<double>(M);
    double incumbent = quad_correlation_mag(g, N, c2, c1);
    for (int round = 0; round < config.refine_rounds; ++round) {
        const double c2_cand = golden_max(c2 - step2, c2 + step2, config.golden_iters,
                                          [&](double x) { return quad_correlation_mag(g, N, x, c1); });
        if (const double v = quad_correlation_mag(g, N, c2_cand, c1); v > incumbent) {
            c2 = c2_cand;
            incumbent = v;
        }
        const double c1_cand = golden_max(c1 - step1, c1 + step1, config.golden_iters,
                                          [&](double x) { return quad_correlation_mag(g, N, c2, x); });
        if (const double v = quad_correlation_mag(g, N, c2, c1_cand); v > incumbent) {
            c1 = c1_cand;
            incumbent = v;
        }
    }

    Correlation c;
    c.phase = PolyPhase{{0.0, c1, c2}, N};
    c.value = phase_correlation(g, c.phase, N);
    c.magnitude = std::abs(c.value);
    if (c.magnitude >= config.threshold) return c;
    return std::nullopt;
}

}  // namespace aplab
