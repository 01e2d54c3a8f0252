#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "aplab/parallel.hpp"
#include "aplab/runners.hpp"

using namespace aplab;

TEST_CASE("factor serialization round-trips") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> h(40);
    for (auto& x : h) x = uni(rng);
    GeneratorRecord rec;
    rec.source = "phase";
    rec.coefficients = {0.1, 0.2};
    const Factor f = levelset_factor(h, 5, 0.01, rec);
    const Factor g = factor_from_json(to_json(f));
    CHECK(g.N == f.N);
    CHECK(g.atom_of == f.atom_of);
    CHECK(g.atom_count == f.atom_count);
    REQUIRE(g.provenance.size() == 1);
    CHECK(g.provenance[0].resolution == 5.0);
    CHECK(g.provenance[0].shift == 0.01);
    CHECK(g.provenance[0].coefficients == rec.coefficients);
}

TEST_CASE("phase serialization round-trips") {
    const PolyPhase p{{0.25, -0.125, 0.7071067811865476}, 1000};
    const PolyPhase q = phase_from_json(to_json(p));
    CHECK(q.coefficients == p.coefficients);
    CHECK(q.domain_scale == p.domain_scale);
}

TEST_CASE("json doubles survive a dump/parse cycle bit for bit") {
    json j;
    j["x"] = 0.1 + 0.2;
    j["y"] = 1.0 / 3.0;
    j["z"] = 123456.789e-30;
    const json k = json::parse(j.dump());
    CHECK(k["x"].get<double>() == j["x"].get<double>());
    CHECK(k["y"].get<double>() == j["y"].get<double>());
    CHECK(k["z"].get<double>() == j["z"].get<double>());
}

TEST_CASE("reports carry schema version and resolved config") {
    GowersOptions opt;
    opt.input.builtin = "ones";
    opt.input.n = 32;
    opt.k = 2;
    const auto run = run_gowers(opt);
    CHECK(run.report["schema_version"] == kSchemaVersion);
    CHECK(run.report["command"] == "gowers");
    CHECK(run.report["config"]["k"] == 2);
    CHECK(run.report["config"]["input"]["builtin"] == "ones");
    CHECK(run.report["results"]["interval_norm"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("replay reproduces runs bit for bit") {
    SUBCASE("gowers on a seeded random input") {
        GowersOptions opt;
        opt.input.builtin = "random";
        opt.input.n = 64;
        opt.input.seed = 1234;
        opt.k = 3;
        opt.both_strategies = true;
        const auto first = run_gowers(opt);
        const auto replay = replay_report(json::parse(first.report.dump()));
        CHECK(replay.exit_code == kExitOk);
        CHECK(replay.report["results"]["match"] == true);
    }
    SUBCASE("dense model on the cosine input") {
        DenseModelOptions opt;
        opt.input.builtin = "cosine";
        opt.input.n = 256;
        opt.input.cosine_cycles = 3;
        opt.cfg.k = 2;
        opt.cfg.epsilon = 0.05;
        opt.cfg.theta = 0.01;
        const auto first = run_dense_model(opt);
        CHECK(first.exit_code == kExitOk);
        const auto replay = replay_report(json::parse(first.report.dump()));
        CHECK(replay.exit_code == kExitOk);
    }
    SUBCASE("monte-carlo linforms with a master seed") {
        LinformsOptions opt;
        opt.N = 2000;
        opt.w = 3;
        opt.b = 5;
        opt.gamma = 1.0 / 8;
        opt.samples = 20000;
        opt.seed = 99;
        const auto first = run_linforms(opt);
        const auto replay = replay_report(json::parse(first.report.dump()));
        CHECK(replay.exit_code == kExitOk);
    }
    SUBCASE("a tampered report is detected") {
        GowersOptions opt;
        opt.input.builtin = "ones";
        opt.input.n = 16;
        auto first = run_gowers(opt);
        first.report["results"]["interval_norm"] = 0.5;
        const auto replay = replay_report(first.report);
        CHECK(replay.exit_code == kExitReplayMismatch);
        CHECK(replay.report["results"]["match"] == false);
    }
}

TEST_CASE("runner results are thread-count independent") {
    BrunTitchmarshOptions opt;
    opt.N = 20000;
    opt.progressions = 10;
    opt.seed = 5;
    set_thread_count(1);
    const auto a = run_brun_titchmarsh(opt);
    set_thread_count(8);
    const auto b = run_brun_titchmarsh(opt);
    set_thread_count(1);
    CHECK(a.report["results"] == b.report["results"]);
}

TEST_CASE("csv emitters") {
    const std::string path = "/tmp/aplab_test_majorant.csv";
    SieveMajorantOptions opt;
    opt.N = 2000;
    opt.csv = path;
    const auto run = run_sieve_majorant(opt);
    CHECK(run.exit_code == kExitOk);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,Wn_plus_b,raw,normalized");
    std::int64_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == run.report["results"]["domain"].get<std::int64_t>());
    std::remove(path.c_str());
}
