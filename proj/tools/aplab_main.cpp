// aplab: desk-scale experiments with uniformity norms, sieve weights,
// dense models and progression counts.  Every subcommand emits a JSON report
// (--out) with the fully resolved config embedded, plus a text summary on
// stdout.  Exit codes: 0 ok, 2 usage/domain error, 3 budget exceeded,
// 10/11/12 dense-model oracle_failure/iteration_cap/energy_cap, 13 replay
// mismatch.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aplab/common.hpp"
#include "aplab/parallel.hpp"
#include "aplab/runners.hpp"

namespace {

using namespace aplab;

std::string g_out_path;

void add_sequence_flags(CLI::App* cmd, SequenceSpec& spec, const std::string& prefix = "",
                        bool n_required = false) {
    const std::string p = prefix.empty() ? "" : prefix + "-";
    cmd->add_option("--" + p + "builtin", spec.builtin,
                    "sequence source: ones|wlambda|nu|random|random01|phase|cosine|file");
    auto* n_opt = cmd->add_option("--" + p + "n", spec.n, "domain length");
    if (n_required) n_opt->required();
    cmd->add_option("--" + p + "w", spec.w, "W-trick cutoff (wlambda/nu)");
    cmd->add_option("--" + p + "b", spec.b, "W-trick residue (wlambda/nu)");
    cmd->add_option("--" + p + "gamma", spec.gamma, "sieve level exponent (nu)");
    cmd->add_option("--" + p + "seed", spec.seed, "seed (random)");
    cmd->add_flag("--" + p + "complex", spec.complex_random, "complex random values");
    cmd->add_option("--" + p + "phase-coeffs", spec.phase_coeffs,
                    "polynomial phase coefficients c0 c1 ... (phase)");
    cmd->add_option("--" + p + "cycles", spec.cosine_cycles, "cosine cycles over the domain");
    cmd->add_option("--" + p + "file", spec.file, "input file, one value per line (file)");
}

void add_dense_flags(CLI::App* cmd, DenseModelConfig& cfg) {
    cmd->add_option("--k", cfg.k, "uniformity order for the stopping rule");
    cmd->add_option("--epsilon", cfg.epsilon, "target residual norm");
    cmd->add_option("--K", cfg.K, "level-set resolution");
    cmd->add_option("--eta", cfg.eta, "small-atom threshold");
    cmd->add_option("--regularity-C", cfg.regularity_C, "regular-shift target");
    cmd->add_option("--shift-grid", cfg.shift_grid, "regular-shift probe count");
    cmd->add_option("--max-iterations", cfg.max_iterations, "iteration cap J");
    cmd->add_option("--theta", cfg.theta, "oracle correlation threshold");
    cmd->add_option("--energy-cap", cfg.energy_cap, "stop when the factor energy exceeds this");
    cmd->add_option("--oracle-grid", cfg.oracle.c2_grid, "quadratic scan grid size");
    cmd->add_option("--oracle-refine", cfg.oracle.refine_rounds, "hill-climb rounds");
    cmd->add_option("--oracle-golden", cfg.oracle.golden_iters, "golden-section iterations");
    cmd->add_flag_callback("--clamp", [&cfg] { cfg.clamp_mode = ClampMode::Clamp; },
                           "clamp the model to [0,2] instead of reporting violations");
}

int emit(const RunResult& run) {
    if (!g_out_path.empty()) {
        std::ofstream out(g_out_path);
        if (!out) {
            std::cerr << "cannot write report to " << g_out_path << "\n";
            return kExitUsage;
        }
        out << run.report.dump(2) << "\n";
    }
    std::cout << summary_text(run.report);
    return run.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale additive combinatorics experiments"};
    app.set_config("--config", "", "read options from a key=value config file");
    app.fallthrough();  // global flags may follow the subcommand
    int threads = 1;
    std::int64_t budget = 0;
    app.add_option("--threads", threads, "worker threads (results are thread-count independent)");
    app.add_option("--budget", budget, "operation cap override (APLAB_BUDGET_CAP)");
    app.add_option("--out", g_out_path, "write the JSON report here");
    app.require_subcommand(1);

    GowersOptions gow;
    auto* cmd_gowers = app.add_subcommand("gowers", "interval uniformity norms");
    add_sequence_flags(cmd_gowers, gow.input, "", /*n_required=*/true);
    cmd_gowers->add_option("--k", gow.k, "norm order");
    cmd_gowers->add_flag("--both-strategies", gow.both_strategies,
                         "also run the enumeration engine and report the delta");

    DenseModelOptions dm;
    auto* cmd_dense = app.add_subcommand("dense-model", "energy-increment dense model");
    add_sequence_flags(cmd_dense, dm.input);
    add_dense_flags(cmd_dense, dm.cfg);
    cmd_dense->add_flag_callback("--explicit-majorant", [&dm] { dm.majorant_auto = false; },
                                 "build the majorant from the majorant-* flags");
    add_sequence_flags(cmd_dense, dm.majorant, "majorant");

    EndToEndOptions e2e;
    std::uint64_t e2e_b = 0;
    auto* cmd_e2e = app.add_subcommand("endtoend", "subset-of-primes counting scenario");
    cmd_e2e->add_option("--n", e2e.N, "ambient scale N");
    cmd_e2e->add_option("--w", e2e.w, "W-trick cutoff");
    cmd_e2e->add_option("--b", e2e_b, "W-trick residue (default: heaviest class)");
    cmd_e2e->add_option("--ap-k", e2e.k, "progression length");
    cmd_e2e->add_option("--subset", e2e.subset, "residue|all");
    cmd_e2e->add_option("--mod", e2e.mod, "subset: prime residue modulus");
    cmd_e2e->add_option("--res", e2e.res, "subset: prime residue");
    cmd_e2e->add_option("--gamma", e2e.gamma, "sieve level exponent");
    cmd_e2e->add_option("--csv", e2e.csv, "dump (pattern, N, value) average rows");
    add_dense_flags(cmd_e2e, e2e.dense);

    SieveMajorantOptions sm;
    auto* cmd_sieve = app.add_subcommand("sieve-majorant", "divisor-square sieve weight");
    cmd_sieve->add_option("--n", sm.N, "scale N");
    cmd_sieve->add_option("--w", sm.w, "W-trick cutoff");
    cmd_sieve->add_option("--b", sm.b, "W-trick residue");
    cmd_sieve->add_option("--gamma", sm.gamma, "R = N^gamma");
    cmd_sieve->add_flag("--perfect-power-term", sm.perfect_power_term,
                        "add the log N correction at perfect powers");
    cmd_sieve->add_option("--csv", sm.csv, "dump (n, Wn+b, raw, normalized) rows");

    LinformsOptions lf;
    auto* cmd_lf = app.add_subcommand("linforms", "linear-forms expectations of the sieve weight");
    cmd_lf->add_option("--n", lf.N, "scale N");
    cmd_lf->add_option("--w", lf.w, "W-trick cutoff");
    cmd_lf->add_option("--b", lf.b, "W-trick residue");
    cmd_lf->add_option("--gamma", lf.gamma, "R = N^gamma");
    cmd_lf->add_option("--form", lf.forms, "one form per flag, e.g. \"1,1:0\" for n+m");
    cmd_lf->add_option("--mode", lf.mode, "exact|monte-carlo");
    cmd_lf->add_option("--samples", lf.samples, "Monte Carlo sample count");
    cmd_lf->add_option("--seed", lf.seed, "master seed");
    cmd_lf->add_option("--scale", lf.scale, "sampling scale (default: keep forms in-domain)");

    VaughanOptions va;
    auto* cmd_va = app.add_subcommand("vaughan", "divisor decomposition replay");
    cmd_va->add_option("--n", va.N, "scale N");

    BrunTitchmarshOptions bt;
    auto* cmd_bt = app.add_subcommand("brun-titchmarsh", "prime-density ratio sweep");
    cmd_bt->add_option("--n", bt.N, "scale N");
    cmd_bt->add_option("--w", bt.w, "W-trick cutoff");
    cmd_bt->add_option("--b", bt.b, "W-trick residue");
    cmd_bt->add_option("--progressions", bt.progressions, "number of random progressions");
    cmd_bt->add_option("--min-exp", bt.min_length_exponent, "minimum length exponent");
    cmd_bt->add_option("--seed", bt.seed, "seed");
    cmd_bt->add_option("--csv", bt.csv, "dump per-progression ratios");

    TypeIIOptions t2;
    auto* cmd_t2 = app.add_subcommand("type-ii", "bilinear range sum");
    cmd_t2->add_option("--W", t2.W, "modulus");
    cmd_t2->add_option("--b", t2.b, "residue");
    cmd_t2->add_option("--L", t2.L, "inner range (L, 2L]");
    cmd_t2->add_option("--M", t2.M, "outer range (M, 2M]");
    cmd_t2->add_option("--freq", t2.phase_freq, "test phase frequency");

    MajorArcOptions ma;
    auto* cmd_ma = app.add_subcommand("major-arc", "partitioned correlation inequality check");
    cmd_ma->add_option("--n", ma.N, "scale N");
    cmd_ma->add_option("--w", ma.w, "W-trick cutoff");
    cmd_ma->add_option("--b", ma.b, "W-trick residue");
    cmd_ma->add_option("--q", ma.q, "progression step (multiple of W; 0 = 50W)");
    cmd_ma->add_option("--min-length", ma.min_length, "minimum piece length");
    cmd_ma->add_option("--C", ma.C, "inequality constant");
    cmd_ma->add_option("--eta", ma.eta, "inequality eta");
    cmd_ma->add_option("--phase-coeffs", ma.phase_coeffs, "phase coefficients c0 c1 ...");

    std::string replay_path;
    auto* cmd_replay = app.add_subcommand("replay", "re-run a report and compare bit for bit");
    cmd_replay->add_option("report", replay_path, "JSON report to replay")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    set_thread_count(threads);
    if (budget > 0) set_budget_cap(budget);
    if (e2e_b > 0) e2e.b = e2e_b;

    try {
        if (*cmd_gowers) return emit(run_gowers(gow));
        if (*cmd_dense) return emit(run_dense_model(dm));
        if (*cmd_e2e) return emit(run_endtoend(e2e));
        if (*cmd_sieve) return emit(run_sieve_majorant(sm));
        if (*cmd_lf) return emit(run_linforms(lf));
        if (*cmd_va) return emit(run_vaughan(va));
        if (*cmd_bt) return emit(run_brun_titchmarsh(bt));
        if (*cmd_t2) return emit(run_type_ii(t2));
        if (*cmd_ma) return emit(run_major_arc(ma));
        if (*cmd_replay) {
            std::ifstream in(replay_path);
            if (!in) {
                std::cerr << "cannot read " << replay_path << "\n";
                return kExitUsage;
            }
            json original = json::parse(in);
            return emit(replay_report(original));
        }
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
