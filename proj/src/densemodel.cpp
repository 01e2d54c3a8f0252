#include "aplab/densemodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aplab/gowers.hpp"

namespace aplab {

const char* to_string(DenseModelOutcome o) {
    switch (o) {
        case DenseModelOutcome::Success: return "success";
        case DenseModelOutcome::OracleFailure: return "oracle_failure";
        case DenseModelOutcome::IterationCap: return "iteration_cap";
        case DenseModelOutcome::EnergyCap: return "energy_cap";
    }
    return "?";
}

namespace {

WeightedSequence masked_residual(const WeightedSequence& f, const WeightedSequence& proj,
                                 const std::vector<bool>& omega) {
    WeightedSequence r{1, std::vector<cplx>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i)
        r.values[i] = omega[i] ? f.values[i] - proj.values[i] : cplx{};
    return r;
}

double l2sq(const WeightedSequence& f) {
    double s = 0;
    for (const cplx& v : f.values) s += std::norm(v);
    return s / static_cast<double>(f.values.size());
}

}  // namespace

DenseModelResult dense_model(const WeightedSequence& f, const WeightedSequence& nu,
                             const DenseModelConfig& cfg) {
    if (cfg.epsilon <= 0 || cfg.epsilon >= 1 || cfg.eta <= 0 || cfg.eta >= 1 ||
        cfg.theta <= 0 || cfg.theta >= 1)
        throw std::domain_error("dense_model: epsilon, eta, theta must lie in (0, 1)");
    if (cfg.K < 2 || cfg.max_iterations < 0)
        throw std::domain_error("dense_model: need K >= 2 and max_iterations >= 0");
    if (f.offset != 1 || nu.offset != 1 || f.length() != nu.length())
        throw std::domain_error("dense_model: f and nu must share the domain [N]");
    const std::int64_t N = f.length();
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (std::abs(f.values[i].imag()) > 1e-12)
            throw std::domain_error("dense_model: f must be real-valued");
        const double v = f.values[i].real();
        if (v < -1e-12 || v > nu.values[i].real() + 1e-12)
            throw std::domain_error("dense_model: need 0 <= f <= nu pointwise (violated at n=" +
                                    std::to_string(static_cast<std::int64_t>(i) + 1) + ")");
    }

    const double f_l2 = l2sq(f);
    const double energy_tol = 1e-10 * std::max(f_l2, 1.0);

    // the loop may exhaust the operation budget mid-run; the trace gathered so
    // far rides along on the exception
    auto run_iterations = [&](DenseModelResult& res) {
        InverseSearchConfig oracle = cfg.oracle;
        oracle.threshold = cfg.theta;
        double prev_energy = -1;
        for (int iter = 1; iter <= cfg.max_iterations + 1; ++iter) {
            const WeightedSequence proj = cond_expect(f, res.factor);
            const OmegaResult om = small_atom_omega(f, res.factor, cfg.eta);
            const WeightedSequence resid = masked_residual(f, proj, om.mask);
            const double rnorm = interval_norm(resid, N, cfg.k).root_value;
            const double en = energy(f, res.factor);

            res.omega = om.mask;
            res.excluded_mass = om.excluded_mass;
            res.residual_norm = rnorm;

            DenseModelIteration step;
            step.iteration = iter;
            step.residual_norm = rnorm;
            step.energy_before = en;
            step.energy_after = en;
            step.atoms_after = res.factor.atom_count;
            step.omega_size = om.omega_size;
            step.excluded_mass = om.excluded_mass;

            if (prev_energy >= 0 && en < prev_energy - energy_tol)
                throw std::runtime_error("dense_model: energy decreased across a refinement");
            prev_energy = en;

            // the in-flight step joins the trace as soon as the residual is
            // measured, so a budget abort still reports it
            res.trace.push_back(step);
            DenseModelIteration& cur = res.trace.back();

            if (rnorm <= cfg.epsilon) {
                res.outcome = DenseModelOutcome::Success;
                break;
            }
            if (en > cfg.energy_cap) {
                res.outcome = DenseModelOutcome::EnergyCap;
                break;
            }
            if (iter > cfg.max_iterations) {
                res.outcome = DenseModelOutcome::IterationCap;
                break;
            }

            const auto found = poly_inverse_search(resid, N, cfg.k - 1, oracle);
            if (!found) {
                res.outcome = DenseModelOutcome::OracleFailure;
                break;
            }
            cur.phase_found = true;
            cur.phase_coefficients = found->phase.coefficients;
            cur.correlation = found->magnitude;

            // real obstruction: the phase polynomial reduced mod 1
            std::vector<double> h(static_cast<std::size_t>(N));
            for (std::int64_t n = 1; n <= N; ++n)
                h[static_cast<std::size_t>(n - 1)] = phase_mod1(found->phase, n);

            const ShiftSearchResult shift =
                regular_shift(h, cfg.K, cfg.regularity_C, cfg.shift_grid);
            // proceed with the best grid shift when the target is missed; recorded
            cur.shift = shift.found ? shift.t : shift.best_t;
            cur.regularity = shift.found ? shift.score : shift.best_score;
            cur.regularity_met = shift.found;

            GeneratorRecord rec;
            rec.source = "phase";
            rec.coefficients = found->phase.coefficients;
            res.factor = join(res.factor, levelset_factor(h, cfg.K, cur.shift, std::move(rec)));
            ++res.refinements;

            cur.energy_after = energy(f, res.factor);
            cur.atoms_after = res.factor.atom_count;
        }
    };

    DenseModelResult res;
    res.factor = trivial_factor(N);
    try {
        run_iterations(res);
    } catch (const budget_error& e) {
        throw dense_model_budget_error(e, std::move(res));
    }

    // model: conditional expectation restricted to Omega
    const WeightedSequence proj = cond_expect(f, res.factor);
    res.g = WeightedSequence{1, std::vector<cplx>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double v = res.omega[i] ? proj.values[i].real() : 0.0;
        if (v < 0.0 || v > 2.0) {
            ++res.clamp_violations;
            if (cfg.clamp_mode == ClampMode::Clamp) v = std::clamp(v, 0.0, 2.0);
        }
        res.g.values[i] = v;
    }
    return res;
}

ModelQuality model_quality(const WeightedSequence& f, const DenseModelResult& result, int k) {
    const std::int64_t N = f.length();
    ModelQuality q;
    q.distance = interval_norm(f - result.g, N, k).root_value;
    const WeightedSequence proj = cond_expect(f, result.factor);
    q.residual_norm =
        interval_norm(masked_residual(f, proj, result.omega), N, k).root_value;
    double mean = 0, mx = 0, excl = 0;
    for (std::size_t i = 0; i < result.g.values.size(); ++i) {
        mean += result.g.values[i].real();
        mx = std::max(mx, result.g.values[i].real());
        if (!result.omega[i]) excl += f.values[i].real() + 1.0;
    }
    q.mean_g = mean / static_cast<double>(N);
    q.max_g = mx;
    q.excluded_mass = excl / static_cast<double>(N);
    return q;
}

}  // namespace aplab
