#include <doctest.h>

#include <cmath>
#include <random>

#include "aplab/factors.hpp"

using namespace aplab;

namespace {

WeightedSequence random_real(std::int64_t n, std::uint64_t seed, double lo = -1, double hi = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(lo, hi);
    WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(n))};
    for (auto& v : f.values) v = uni(rng);
    return f;
}

Factor random_levelset(std::int64_t N, std::uint64_t seed, double K) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> h(static_cast<std::size_t>(N));
    for (auto& x : h) x = uni(rng);
    return levelset_factor(h, K, 1e-4);
}

double l2sq(const WeightedSequence& f) {
    double s = 0;
    for (const auto& v : f.values) s += std::norm(v);
    return s / static_cast<double>(f.values.size());
}

}  // namespace

TEST_CASE("levelset_factor") {
    SUBCASE("constant h is a single atom") {
        std::vector<double> h(20, 0.37);
        const auto f = levelset_factor(h, 4, 0.01);
        CHECK(f.atom_count == 1);
    }
    SUBCASE("upper-closed binning at the boundary") {
        // h(n) = n/N, K=2, t=0: values <= 1/2 vs > 1/2, so {1..5} | {6..10}
        std::vector<double> h;
        for (int n = 1; n <= 10; ++n) h.push_back(n / 10.0);
        const auto f = levelset_factor(h, 2, 0.0);
        REQUIRE(f.atom_count == 2);
        for (int n = 1; n <= 5; ++n) CHECK(f.atom(n) == f.atom(1));
        for (int n = 6; n <= 10; ++n) CHECK(f.atom(n) == f.atom(6));
        CHECK(f.atom(5) != f.atom(6));
    }
    SUBCASE("K = 1 with values inside one cell is a single atom") {
        // upper-closed cells: (0, 1] is one cell; 0.0 itself would sit on the
        // boundary and fall into the cell below
        std::vector<double> h{0.01, 0.2, 0.5, 0.9, 0.99};
        CHECK(levelset_factor(h, 1, 0.0).atom_count == 1);
        std::vector<double> with_zero{0.0, 0.2};
        CHECK(levelset_factor(with_zero, 1, 0.0).atom_count == 2);
    }
    SUBCASE("atom count for [0,1]-bounded h is at most K+1") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::mt19937_64 rng(400 + seed);
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::vector<double> h(200);
            for (auto& x : h) x = uni(rng);
            const double K = 3 + static_cast<double>(seed % 5);
            const double t = uni(rng) / K;
            REQUIRE(levelset_factor(h, K, t).atom_count <= static_cast<int>(K) + 1);
        }
    }
    SUBCASE("K below 1 is rejected") {
        std::vector<double> h{0.1};
        CHECK_THROWS_AS(levelset_factor(h, 0.5, 0.0), std::domain_error);
    }
}

TEST_CASE("join") {
    SUBCASE("identity and idempotence") {
        const auto f = random_levelset(50, 1, 5);
        const auto t = trivial_factor(50);
        const auto j1 = join(f, t);
        CHECK(j1.atom_count == f.atom_count);
        for (std::int64_t n = 1; n <= 50; ++n)
            CHECK((j1.atom(n) == j1.atom(1)) == (f.atom(n) == f.atom(1)));
        const auto j2 = join(f, f);
        CHECK(j2.atom_count == f.atom_count);
    }
    SUBCASE("brute-force intersection on N = 8") {
        std::vector<double> h1{0.1, 0.1, 0.6, 0.6, 0.1, 0.6, 0.1, 0.6};
        std::vector<double> h2{0.1, 0.6, 0.1, 0.6, 0.6, 0.1, 0.1, 0.6};
        const auto a = levelset_factor(h1, 2, 0.0);
        const auto b = levelset_factor(h2, 2, 0.0);
        const auto j = join(a, b);
        // oracle: pairs (a.atom, b.atom) appearing among n
        for (std::int64_t n = 1; n <= 8; ++n)
            for (std::int64_t m = 1; m <= 8; ++m) {
                const bool same_pair = a.atom(n) == a.atom(m) && b.atom(n) == b.atom(m);
                REQUIRE((j.atom(n) == j.atom(m)) == same_pair);
            }
        CHECK(j.atom_count == 4);
    }
    SUBCASE("mismatched N") {
        CHECK_THROWS_AS(join(trivial_factor(5), trivial_factor(6)), std::domain_error);
    }
}

TEST_CASE("cond_expect") {
    SUBCASE("singleton atoms reproduce f") {
        const auto f = random_real(6, 2);
        std::vector<double> h{0.05, 0.15, 0.25, 0.35, 0.45, 0.55};
        const auto B = levelset_factor(h, 10, 0.0);
        REQUIRE(B.atom_count == 6);
        const auto p = cond_expect(f, B);
        for (std::int64_t n = 1; n <= 6; ++n) CHECK(p.at(n) == f.at(n));
    }
    SUBCASE("single atom gives the mean") {
        const auto f = random_real(9, 3);
        const auto p = cond_expect(f, trivial_factor(9));
        for (std::int64_t n = 1; n <= 9; ++n)
            CHECK(std::abs(p.at(n) - f.mean()) < 1e-15);
    }
    SUBCASE("hand example") {
        WeightedSequence f{1, {cplx{1}, cplx{2}, cplx{3}, cplx{4}}};
        std::vector<double> h{0.1, 0.1, 0.7, 0.7};
        const auto B = levelset_factor(h, 2, 0.0);
        const auto p = cond_expect(f, B);
        CHECK(p.at(1) == cplx{1.5});
        CHECK(p.at(2) == cplx{1.5});
        CHECK(p.at(3) == cplx{3.5});
        CHECK(p.at(4) == cplx{3.5});
    }
    SUBCASE("idempotence and mean preservation") {
        const auto f = random_real(120, 4);
        const auto B = random_levelset(120, 5, 6);
        const auto p = cond_expect(f, B);
        const auto pp = cond_expect(p, B);
        for (std::size_t i = 0; i < p.values.size(); ++i) REQUIRE(p.values[i] == pp.values[i]);
        CHECK(std::abs(p.mean() - f.mean()) <= 1e-12 * std::abs(f.mean()));
    }
    SUBCASE("averaging identity per atom") {
        const auto f = random_real(50, 6);
        const auto B = random_levelset(50, 7, 4);
        const auto p = cond_expect(f, B);
        for (std::int32_t a = 0; a < B.atom_count; ++a) {
            cplx sf{}, sp{};
            for (std::int64_t n = 1; n <= 50; ++n)
                if (B.atom(n) == a) {
                    sf += f.at(n);
                    sp += p.at(n);
                }
            REQUIRE(std::abs(sf - sp) < 1e-12);
        }
    }
}

TEST_CASE("energy") {
    const auto f = random_real(80, 8);
    SUBCASE("trivial factor: squared mean") {
        CHECK(energy(f, trivial_factor(80)) ==
              doctest::Approx(std::norm(f.mean())).epsilon(1e-12));
    }
    SUBCASE("singleton atoms: full l2 energy") {
        std::vector<double> h(80);
        for (int i = 0; i < 80; ++i) h[i] = (i + 0.5) / 80.0;
        const auto B = levelset_factor(h, 80, 0.0);
        REQUIRE(B.atom_count == 80);
        CHECK(energy(f, B) == doctest::Approx(l2sq(f)).epsilon(1e-12));
    }
    SUBCASE("energy is monotone along refinement chains") {
        const auto B1 = random_levelset(80, 9, 3);
        const auto B2 = join(B1, random_levelset(80, 10, 4));
        const auto B3 = join(B2, random_levelset(80, 11, 5));
        const double tol = 1e-10 * l2sq(f);
        CHECK(energy(f, trivial_factor(80)) <= energy(f, B1) + tol);
        CHECK(energy(f, B1) <= energy(f, B2) + tol);
        CHECK(energy(f, B2) <= energy(f, B3) + tol);
    }
}

TEST_CASE("pythagoras residual") {
    SUBCASE("refinement equal to the base gives exactly 0") {
        const auto f = random_real(30, 12);
        const auto B = random_levelset(30, 13, 4);
        CHECK(pythagoras_residual(f, B, B) == 0.0);
    }
    SUBCASE("random refinements stay within tolerance") {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const auto f = random_real(100, 100 + seed);
            const auto B = random_levelset(100, 200 + seed, 4);
            const auto Bp = join(B, random_levelset(100, 300 + seed, 5));
            REQUIRE(std::abs(pythagoras_residual(f, B, Bp)) < 1e-10 * std::max(l2sq(f), 1.0));
        }
    }
    SUBCASE("values at weight scale (log N sized)") {
        const std::int64_t N = 10000;
        auto f = random_real(N, 77, 0.0, std::log(static_cast<double>(N)));
        const auto B = random_levelset(N, 78, 6);
        const auto Bp = join(B, random_levelset(N, 79, 7));
        CHECK(std::abs(pythagoras_residual(f, B, Bp)) < 1e-8 * l2sq(f));
    }
    SUBCASE("non-refinement is rejected") {
        const auto f = random_real(40, 14);
        const auto A = random_levelset(40, 15, 4);
        const auto B = random_levelset(40, 16, 4);
        const auto joined = join(A, B);
        CHECK_THROWS_AS(pythagoras_residual(f, joined, A), std::domain_error);
        CHECK_NOTHROW(pythagoras_residual(f, A, joined));
    }
}

TEST_CASE("regularity score") {
    SUBCASE("constant at half-integer distance scores 1") {
        std::vector<double> h(64, 0.5);  // K=1: ||h||_T = 1/2
        const auto rep = regularity_score(h, 1);
        CHECK(rep.zero_hits == 0);
        CHECK(rep.score == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.argmax_radius == doctest::Approx(0.5));
    }
    SUBCASE("integer collision blows up") {
        std::vector<double> h(10, 0.25);
        const auto rep = regularity_score(h, 4);  // K*h = 1 exactly
        CHECK(rep.zero_hits == 10);
        CHECK(std::isinf(rep.score));
    }
    SUBCASE("h(n) = n/N hits the boundary at n = N") {
        std::vector<double> h;
        for (int n = 1; n <= 100; ++n) h.push_back(n / 100.0);
        const auto rep = regularity_score(h, 1);
        CHECK(rep.zero_hits == 1);  // ||1.0||_T = 0
        CHECK(std::isinf(rep.score));
    }
    SUBCASE("jump enumeration matches a dense grid scan") {
        std::vector<double> h;
        for (int n = 1; n <= 100; ++n) h.push_back((n - 0.5) / 100.0);
        const auto rep = regularity_score(h, 1);
        // the grid can only undershoot the sup, and by at most its resolution
        double grid_best = 0;
        const double step = 1e-6;
        for (int i = 1; i <= 500000; ++i) {
            const double r = i * step;
            std::int64_t count = 0;
            for (double x : h) {
                const double d = std::abs(x - std::round(x));
                if (d <= r) ++count;
            }
            grid_best = std::max(grid_best, count / (2.0 * r * 100.0));
        }
        CHECK(rep.score >= grid_best - 1e-9);
        CHECK(rep.score <= grid_best * (1.0 + 2e-4) + 1e-9);
        CHECK(rep.score == doctest::Approx(2.0).epsilon(1e-9));  // two points at r = 0.005
    }
    SUBCASE("score dominates every probed radius") {
        std::mt19937_64 rng(55);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> h(128);
        for (auto& x : h) x = uni(rng);
        const auto rep = regularity_score(h, 8);
        for (double r : {0.01, 0.05, 0.1, 0.2, 0.3, 0.49}) {
            std::int64_t count = 0;
            for (double x : h) {
                const double v = 8 * x;
                if (std::abs(v - std::round(v)) <= r) ++count;
            }
            REQUIRE(rep.score >= count / (2.0 * r * 128.0) - 1e-9);
        }
    }
}

TEST_CASE("regular shift") {
    SUBCASE("grid-aligned constant lands exactly mid-cell, score 1") {
        // K c - t K = 0.5 is solvable on the grid for c = 0.3125, K = 4, m = 64
        std::vector<double> h(32, 0.3125);
        const auto res = regular_shift(h, 4, 1.0 + 1e-9, 64);
        CHECK(res.found);
        CHECK(res.score <= 1.0 + 1e-9);
    }
    SUBCASE("generic constant gets close to mid-cell") {
        std::vector<double> h(32, 0.42);
        const auto res = regular_shift(h, 4, 1.05, 64);
        CHECK(res.found);
        CHECK(res.score <= 1.05);
    }
    SUBCASE("uniform-like values are found at C = 16") {
        std::mt19937_64 rng(66);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> h(512);
        for (auto& x : h) x = uni(rng);
        const auto res = regular_shift(h, 8, 16, 64);
        CHECK(res.found);
    }
    SUBCASE("adversarial mass at grid images with a tiny grid") {
        // every shifted copy hits an exact boundary: search exhausts
        std::vector<double> h;
        for (int i = 0; i < 4; ++i) h.push_back(i / 4.0);
        const auto res = regular_shift(h, 4, 1000, 1);
        CHECK_FALSE(res.found);
        CHECK(std::isinf(res.best_score));
    }
}

TEST_CASE("small atom omega") {
    const std::int64_t N = 60;
    auto f = random_real(N, 91, 0.0, 1.0);
    const auto B = random_levelset(N, 92, 5);

    SUBCASE("tiny eta keeps everything") {
        const auto om = small_atom_omega(f, B, 1e-9);
        CHECK(om.omega_size == N);
        CHECK(om.excluded_mass == 0.0);
    }
    SUBCASE("huge eta drops everything") {
        const auto om = small_atom_omega(f, B, 0.999999e9);
        CHECK(om.omega_size == 0);
        CHECK(om.excluded_mass == doctest::Approx(f.mean().real() + 1.0).epsilon(1e-12));
    }
    SUBCASE("excluded mass is bounded by atoms * eta") {
        const double eta = 0.02;
        const auto om = small_atom_omega(f, B, eta);
        CHECK(om.excluded_mass <= static_cast<double>(B.atom_count) * eta + 1e-12);
        // and equals the direct replay
        double excl = 0;
        for (std::int64_t n = 1; n <= N; ++n)
            if (!om.mask[static_cast<std::size_t>(n - 1)]) excl += f.at(n).real() + 1.0;
        CHECK(om.excluded_mass == doctest::Approx(excl / static_cast<double>(N)).epsilon(1e-12));
    }
}
