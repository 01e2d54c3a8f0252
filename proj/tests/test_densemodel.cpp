#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aplab/densemodel.hpp"
#include "aplab/gowers.hpp"

using namespace aplab;

namespace {

WeightedSequence cosine_input(std::int64_t N, double cycles) {
    WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(N))};
    for (std::int64_t n = 1; n <= N; ++n)
        f.ref(n) = 1.0 + std::cos(2.0 * std::numbers::pi * cycles * static_cast<double>(n) /
                                  static_cast<double>(N));
    return f;
}

double l1_mean(const WeightedSequence& f) {
    return f.abs_sum() / static_cast<double>(f.values.size());
}

}  // namespace

TEST_CASE("dense_model preconditions") {
    DenseModelConfig cfg;
    const auto nu = const_sequence(16, 2.0);

    SUBCASE("f must be real") {
        WeightedSequence f{1, std::vector<cplx>(16, cplx{0.5, 0.5})};
        CHECK_THROWS_AS(dense_model(f, nu, cfg), std::domain_error);
    }
    SUBCASE("f must be nonnegative") {
        WeightedSequence f{1, std::vector<cplx>(16, cplx{0.5})};
        f.ref(3) = -0.2;
        CHECK_THROWS_AS(dense_model(f, nu, cfg), std::domain_error);
    }
    SUBCASE("f must sit below the majorant, error names the index") {
        WeightedSequence f{1, std::vector<cplx>(16, cplx{0.5})};
        f.ref(5) = 2.5;
        CHECK_THROWS_WITH_AS(dense_model(f, nu, cfg), doctest::Contains("n=5"),
                             std::domain_error);
    }
    SUBCASE("domains must agree") {
        WeightedSequence f{1, std::vector<cplx>(8, cplx{0.5})};
        CHECK_THROWS_AS(dense_model(f, nu, cfg), std::domain_error);
    }
    SUBCASE("parameter ranges") {
        WeightedSequence f{1, std::vector<cplx>(16, cplx{0.5})};
        DenseModelConfig bad = cfg;
        bad.epsilon = 0;
        CHECK_THROWS_AS(dense_model(f, nu, bad), std::domain_error);
        bad = cfg;
        bad.K = 1;
        CHECK_THROWS_AS(dense_model(f, nu, bad), std::domain_error);
    }
}

TEST_CASE("trivial successes") {
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.05;

    SUBCASE("constant f needs no refinement") {
        const auto f = const_sequence(64, 0.7);
        const auto nu = const_sequence(64, 1.0);
        const auto r = dense_model(f, nu, cfg);
        CHECK(r.outcome == DenseModelOutcome::Success);
        CHECK(r.refinements == 0);
        CHECK(r.residual_norm == 0.0);
        for (const auto& v : r.g.values) CHECK(v.real() == doctest::Approx(0.7));
    }
    SUBCASE("epsilon above the first residual stops immediately") {
        const std::int64_t N = 128;
        const auto f = cosine_input(N, 5);
        const auto nu = const_sequence(N, 3.0);
        DenseModelConfig loose = cfg;
        loose.epsilon = 0.9;  // first residual is about 0.6
        const auto r = dense_model(f, nu, loose);
        CHECK(r.outcome == DenseModelOutcome::Success);
        CHECK(r.refinements == 0);
        CHECK(r.factor.atom_count == 1);
    }
}

TEST_CASE("cosine pipeline") {
    // the canonical scenario: f(n) = 1 + cos(2 pi 3 n / 512), k = 2
    const std::int64_t N = 512;
    const auto f = cosine_input(N, 3);
    const auto nu = const_sequence(N, 3.0);
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.05;
    cfg.K = 8;
    cfg.eta = 1e-3;
    cfg.theta = 0.01;
    cfg.max_iterations = 6;
    const auto r = dense_model(f, nu, cfg);

    CHECK(r.outcome == DenseModelOutcome::Success);
    CHECK(r.refinements <= 3);
    CHECK(r.residual_norm <= 0.05);

    SUBCASE("first found frequency is close to 3/512") {
        REQUIRE(r.trace.size() >= 2);
        REQUIRE(r.trace[0].phase_found);
        const double freq = r.trace[0].phase_coefficients[1];
        const double d1 = std::abs(freq - 3.0 / 512.0);
        const double d2 = std::abs(freq - (1.0 - 3.0 / 512.0));
        CHECK(std::min({d1, 1.0 - d1, d2, 1.0 - d2}) <= 2.0 / 1024.0);
    }
    SUBCASE("model stays in [0, 2] and energies are monotone") {
        for (const auto& v : r.g.values) {
            CHECK(v.real() >= 0.0);
            CHECK(v.real() <= 2.0 + 1e-9);
        }
        CHECK(r.clamp_violations == 0);
        for (std::size_t i = 0; i + 1 < r.trace.size(); ++i)
            CHECK(r.trace[i + 1].energy_before >= r.trace[i].energy_after - 1e-10 * 4.0);
        for (const auto& step : r.trace)
            CHECK(step.energy_after >= step.energy_before - 1e-10 * 4.0);
    }
    SUBCASE("fresh recomputation confirms the stopping rule") {
        const auto q = model_quality(f, r, cfg.k);
        CHECK(q.residual_norm <= cfg.epsilon + 1e-9);
        CHECK(q.distance <= cfg.epsilon + 1e-9);  // Omega is everything here
        CHECK(q.excluded_mass == 0.0);
        CHECK(q.max_g <= 2.0 + 1e-9);
    }
    SUBCASE("factor growth stays within (K+1)^iterations") {
        double cap = 1;
        for (int i = 0; i < r.refinements; ++i) cap *= cfg.K + 1;
        CHECK(r.factor.atom_count <= cap);
    }
}

TEST_CASE("energy increment bound when a strong phase is found") {
    // large K makes the derived Cauchy-Schwarz chain bound nontrivial
    const std::int64_t N = 512;
    const auto f = cosine_input(N, 7);
    const auto nu = const_sequence(N, 3.0);
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.01;
    cfg.K = 64;
    cfg.theta = 0.05;
    cfg.max_iterations = 1;
    const auto r = dense_model(f, nu, cfg);
    REQUIRE(!r.trace.empty());
    const auto& step = r.trace[0];
    REQUIRE(step.phase_found);
    const double gain = step.energy_after - step.energy_before;

    // replay of the chain: correlation loses at most 2 pi / K per point of
    // the windowed residual's l1 mass, and Cauchy-Schwarz turns the rest
    // into an l2 gain
    const WeightedSequence proj = cond_expect(f, trivial_factor(N));
    const double resid_l1 = l1_mean(f - proj);
    const double chain =
        std::max(0.0, step.correlation - 2.0 * std::numbers::pi * resid_l1 / cfg.K);
    CHECK(gain >= chain * chain - 1e-9);

    // the simplified desk-scale form of the same bound
    CHECK(gain >= step.correlation * step.correlation / 4.0 - 2.0 / cfg.K - 1e-6);
}

TEST_CASE("failure outcomes") {
    const std::int64_t N = 256;
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.01;

    SUBCASE("oracle failure on noise with a huge threshold") {
        std::mt19937_64 rng(5);
        WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(N))};
        for (auto& v : f.values) v = (rng() & 1) ? 1.0 : 0.0;
        const auto nu = const_sequence(N, 2.0);
        DenseModelConfig strict = cfg;
        strict.theta = 0.999;
        const auto r = dense_model(f, nu, strict);
        CHECK(r.outcome == DenseModelOutcome::OracleFailure);
        CHECK_FALSE(r.trace.back().phase_found);
    }
    SUBCASE("iteration cap with J = 0 and a large residual") {
        const auto f = cosine_input(N, 5);
        const auto nu = const_sequence(N, 3.0);
        DenseModelConfig capped = cfg;
        capped.max_iterations = 0;
        const auto r = dense_model(f, nu, capped);
        CHECK(r.outcome == DenseModelOutcome::IterationCap);
        CHECK(r.refinements == 0);
    }
    SUBCASE("energy cap") {
        const auto f = cosine_input(N, 5);  // mean 1, so trivial energy is 1
        const auto nu = const_sequence(N, 3.0);
        DenseModelConfig capped = cfg;
        capped.energy_cap = 0.5;
        const auto r = dense_model(f, nu, capped);
        CHECK(r.outcome == DenseModelOutcome::EnergyCap);
    }
}

TEST_CASE("clamp mode") {
    // mean above 2 on an atom: with clamp_mode = report the value stays and is
    // counted; with clamp it is cut to 2
    const std::int64_t N = 64;
    WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(N), cplx{2.5})};
    const auto nu = const_sequence(N, 3.0);
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.5;

    const auto reported = dense_model(f, nu, cfg);
    CHECK(reported.outcome == DenseModelOutcome::Success);
    CHECK(reported.clamp_violations == N);
    CHECK(reported.g.at(1).real() == doctest::Approx(2.5));

    DenseModelConfig clamped = cfg;
    clamped.clamp_mode = ClampMode::Clamp;
    const auto cut = dense_model(f, nu, clamped);
    CHECK(cut.clamp_violations == N);
    CHECK(cut.g.at(1).real() == 2.0);
}

TEST_CASE("budget exhaustion carries the partial trace") {
    const std::int64_t N = 512;
    const auto f = cosine_input(N, 3);
    const auto nu = const_sequence(N, 3.0);
    DenseModelConfig cfg;
    cfg.k = 3;  // the quadratic oracle grid is what blows the tiny budget
    cfg.epsilon = 0.01;
    cfg.theta = 0.01;
    // enough for the U^3 residual norms, not for the quadratic oracle scan
    const auto old_cap = budget_cap();
    set_budget_cap(200000000);
    try {
        dense_model(f, nu, cfg);
        set_budget_cap(old_cap);
        FAIL("expected a budget error");
    } catch (const dense_model_budget_error& e) {
        set_budget_cap(old_cap);
        REQUIRE(!e.partial.trace.empty());
        CHECK(e.partial.trace[0].residual_norm > 0.0);
        CHECK_FALSE(e.partial.trace[0].phase_found);
    }
}

TEST_CASE("overly aggressive small-atom threshold empties the window") {
    // once the factor refines, every atom's (f+1)-mass drops below eta and the
    // masked residual vanishes; the run reports the excluded mass honestly
    const std::int64_t N = 256;
    const auto f = cosine_input(N, 3);
    const auto nu = const_sequence(N, 3.0);
    DenseModelConfig cfg;
    cfg.k = 2;
    cfg.epsilon = 0.05;
    cfg.K = 8;
    cfg.eta = 0.9;
    cfg.theta = 0.01;
    const auto r = dense_model(f, nu, cfg);
    CHECK(r.outcome == DenseModelOutcome::Success);
    CHECK(r.excluded_mass > 1.0);
    const auto q = model_quality(f, r, cfg.k);
    CHECK(q.excluded_mass == doctest::Approx(r.excluded_mass).epsilon(1e-12));
}
