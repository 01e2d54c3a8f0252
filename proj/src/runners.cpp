#include "aplab/runners.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "aplab/arith.hpp"
#include "aplab/counting.hpp"
#include "aplab/gowers.hpp"
#include "aplab/parallel.hpp"
#include "aplab/primesums.hpp"

namespace aplab {

namespace {

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

ArithTables tables_for(std::int64_t limit) { return build_tables(std::max<std::int64_t>(limit, 2)); }

}  // namespace

WeightedSequence build_sequence(const SequenceSpec& spec) {
    if (spec.builtin == "ones") return ones(spec.n);
    if (spec.builtin == "wlambda") {
        const auto wt = make_wtrick(spec.w, spec.b, spec.n);
        const auto tables = tables_for(spec.n);
        return wtricked_lambda(wt, tables);
    }
    if (spec.builtin == "nu") {
        const auto tables = tables_for(spec.n);
        MajorantParams mp;
        mp.N = spec.n;
        mp.wtrick = make_wtrick(spec.w, spec.b, spec.n);
        mp.gamma = spec.gamma;
        mp.R = std::pow(static_cast<double>(spec.n), spec.gamma);
        return gpy_majorant(mp, tables).normalized;
    }
    if (spec.builtin == "random") {
        auto rng = seeded_rng(spec.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(spec.n))};
        for (auto& v : f.values) {
            const double re = uni(rng);
            v = spec.complex_random ? cplx{re, uni(rng)} : cplx{re, 0.0};
        }
        return f;
    }
    if (spec.builtin == "random01") {
        auto rng = seeded_rng(spec.seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(spec.n))};
        for (auto& v : f.values) v = uni(rng);
        return f;
    }
    if (spec.builtin == "phase") {
        PolyPhase p{spec.phase_coeffs, spec.n};
        return phase_sequence(p, spec.n);
    }
    if (spec.builtin == "cosine") {
        WeightedSequence f{1, std::vector<cplx>(static_cast<std::size_t>(spec.n))};
        for (std::int64_t n = 1; n <= spec.n; ++n)
            f.ref(n) = 1.0 + std::cos(2.0 * std::numbers::pi * spec.cosine_cycles *
                                      static_cast<double>(n) / static_cast<double>(spec.n));
        return f;
    }
    if (spec.builtin == "file") {
        std::ifstream in(spec.file);
        if (!in) throw std::domain_error("cannot open input file: " + spec.file);
        std::vector<cplx> vals;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            double re = 0, im = 0;
            if (!(ls >> re)) throw std::domain_error("bad input line: " + line);
            ls >> im;
            vals.emplace_back(re, im);
        }
        if (vals.empty()) throw std::domain_error("input file is empty: " + spec.file);
        return {1, std::move(vals)};
    }
    throw std::domain_error("unknown builtin sequence: " + spec.builtin);
}

json to_json(const SequenceSpec& s) {
    return json{{"builtin", s.builtin},
                {"n", s.n},
                {"w", s.w},
                {"b", s.b},
                {"gamma", s.gamma},
                {"seed", s.seed},
                {"complex_random", s.complex_random},
                {"phase_coeffs", s.phase_coeffs},
                {"cosine_cycles", s.cosine_cycles},
                {"file", s.file}};
}

SequenceSpec sequence_from_json(const json& j) {
    SequenceSpec s;
    s.builtin = j.value("builtin", s.builtin);
    s.n = j.value("n", s.n);
    s.w = j.value("w", s.w);
    s.b = j.value("b", s.b);
    s.gamma = j.value("gamma", s.gamma);
    s.seed = j.value("seed", s.seed);
    s.complex_random = j.value("complex_random", s.complex_random);
    s.phase_coeffs = j.value("phase_coeffs", s.phase_coeffs);
    s.cosine_cycles = j.value("cosine_cycles", s.cosine_cycles);
    s.file = j.value("file", s.file);
    return s;
}

namespace {

json dense_cfg_to_json(const DenseModelConfig& c) {
    return json{{"k", c.k},
                {"epsilon", c.epsilon},
                {"K", c.K},
                {"eta", c.eta},
                {"regularity_C", c.regularity_C},
                {"shift_grid", c.shift_grid},
                {"max_iterations", c.max_iterations},
                {"theta", c.theta},
                {"energy_cap", c.energy_cap},
                {"clamp_mode", c.clamp_mode == ClampMode::Clamp ? "clamp" : "report"},
                {"oracle_c2_grid", c.oracle.c2_grid},
                {"oracle_refine_rounds", c.oracle.refine_rounds},
                {"oracle_golden_iters", c.oracle.golden_iters}};
}

DenseModelConfig dense_cfg_from_json(const json& j) {
    DenseModelConfig c;
    c.k = j.value("k", c.k);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.K = j.value("K", c.K);
    c.eta = j.value("eta", c.eta);
    c.regularity_C = j.value("regularity_C", c.regularity_C);
    c.shift_grid = j.value("shift_grid", c.shift_grid);
    c.max_iterations = j.value("max_iterations", c.max_iterations);
    c.theta = j.value("theta", c.theta);
    c.energy_cap = j.value("energy_cap", c.energy_cap);
    c.clamp_mode = j.value("clamp_mode", "report") == std::string("clamp") ? ClampMode::Clamp
                                                                           : ClampMode::Report;
    c.oracle.c2_grid = j.value("oracle_c2_grid", c.oracle.c2_grid);
    c.oracle.refine_rounds = j.value("oracle_refine_rounds", c.oracle.refine_rounds);
    c.oracle.golden_iters = j.value("oracle_golden_iters", c.oracle.golden_iters);
    return c;
}

int outcome_exit_code(DenseModelOutcome o) {
    switch (o) {
        case DenseModelOutcome::Success: return kExitOk;
        case DenseModelOutcome::OracleFailure: return kExitOracleFailure;
        case DenseModelOutcome::IterationCap: return kExitIterationCap;
        case DenseModelOutcome::EnergyCap: return kExitEnergyCap;
    }
    return kExitUsage;
}

}  // namespace

RunResult run_gowers(const GowersOptions& opt) {
    json report = make_report("gowers", json{{"input", to_json(opt.input)},
                                             {"k", opt.k},
                                             {"both_strategies", opt.both_strategies}});
    const WeightedSequence f = build_sequence(opt.input);
    const std::int64_t N = f.length();
    const GowersValue rec = interval_norm(f, N, opt.k, NormStrategy::Recursion);
    json& res = report["results"];
    res["interval_norm"] = rec.root_value;
    res["power_value"] = rec.power_value;
    res["n"] = N;
    if (opt.both_strategies) {
        const GowersValue en = interval_norm(f, N, opt.k, NormStrategy::Enumeration);
        res["interval_norm_enumeration"] = en.root_value;
        const double scale = std::max(std::abs(rec.root_value), 1e-300);
        res["strategy_delta_relative"] = std::abs(rec.root_value - en.root_value) / scale;
    }
    return {kExitOk, report};
}

RunResult run_dense_model(const DenseModelOptions& opt) {
    json cfg{{"input", to_json(opt.input)},
             {"dense", dense_cfg_to_json(opt.cfg)},
             {"majorant_auto", opt.majorant_auto}};
    if (!opt.majorant_auto) cfg["majorant"] = to_json(opt.majorant);
    json report = make_report("dense-model", cfg);

    const WeightedSequence f = build_sequence(opt.input);
    WeightedSequence nu;
    if (opt.majorant_auto) {
        nu = const_sequence(f.length(), f.max_abs() + 1.0);
    } else {
        nu = build_sequence(opt.majorant);
    }
    json& res = report["results"];
    DenseModelResult r;
    try {
        r = dense_model(f, nu, opt.cfg);
    } catch (const dense_model_budget_error& e) {
        // budget ran out mid-iteration: surface the trace gathered so far
        res["dense_model"] = to_json(e.partial);
        res["budget_error"] = e.what();
        return {kExitBudget, report};
    }
    const ModelQuality q = model_quality(f, r, opt.cfg.k);
    res["dense_model"] = to_json(r);
    res["factor"] = to_json(r.factor);
    std::vector<double> model_values;
    model_values.reserve(r.g.values.size());
    for (const auto& v : r.g.values) model_values.push_back(v.real());
    res["model_values"] = model_values;
    res["quality"] = json{{"distance", q.distance},
                          {"residual_norm", q.residual_norm},
                          {"mean_g", q.mean_g},
                          {"max_g", q.max_g},
                          {"excluded_mass", q.excluded_mass}};
    return {outcome_exit_code(r.outcome), report};
}

RunResult run_sieve_majorant(const SieveMajorantOptions& opt) {
    json report = make_report("sieve-majorant", json{{"N", opt.N},
                                                     {"w", opt.w},
                                                     {"b", opt.b},
                                                     {"gamma", opt.gamma},
                                                     {"perfect_power_term", opt.perfect_power_term},
                                                     {"u2_norm", opt.u2_norm},
                                                     {"csv", opt.csv}});
    const auto tables = tables_for(opt.N);
    MajorantParams mp;
    mp.N = opt.N;
    mp.wtrick = make_wtrick(opt.w, opt.b, opt.N);
    mp.gamma = opt.gamma;
    mp.R = std::pow(static_cast<double>(opt.N), opt.gamma);
    mp.perfect_power_term = opt.perfect_power_term;
    const MajorantResult m = gpy_majorant(mp, tables);

    json& res = report["results"];
    res["R"] = mp.R;
    res["prefactor"] = m.prefactor;
    res["raw_mean"] = m.raw_mean;
    res["normalized_mean"] = m.normalized.mean().real();
    res["domain"] = m.raw.length();
    if (opt.u2_norm) {
        const WeightedSequence dev = m.normalized - ones(m.normalized.length());
        res["u2_norm_nu_minus_1"] = interval_norm(dev, m.normalized.length(), 2).root_value;
    }
    const WeightedSequence f = wtricked_lambda(mp.wtrick, tables);
    const MajorizationReport mj = majorization_check(m.normalized, f, mp, tables);
    res["majorization"] = json{{"any_prime", mj.any_prime},
                               {"min_ratio", mj.min_ratio},
                               {"argmin_n", mj.argmin_n},
                               {"violations", mj.violations},
                               {"checked", mj.checked}};
    if (!opt.csv.empty()) write_majorant_csv(opt.csv, m, mp);
    return {kExitOk, report};
}

LinearFormSystem parse_forms(const std::vector<std::string>& rows) {
    LinearFormSystem psi;
    for (const std::string& row : rows) {
        const auto colon = row.find(':');
        std::string lin = colon == std::string::npos ? row : row.substr(0, colon);
        std::int64_t c = 0;
        if (colon != std::string::npos) c = std::stoll(row.substr(colon + 1));
        std::vector<std::int64_t> L;
        std::istringstream ls(lin);
        std::string cell;
        while (std::getline(ls, cell, ',')) L.push_back(std::stoll(cell));
        if (!psi.L.empty() && L.size() != psi.L[0].size())
            throw std::domain_error("linear forms must share the variable count");
        psi.L.push_back(std::move(L));
        psi.c.push_back(c);
    }
    if (psi.L.empty()) throw std::domain_error("no linear forms given");
    return psi;
}

RunResult run_linforms(const LinformsOptions& opt) {
    json report = make_report("linforms", json{{"N", opt.N},
                                               {"w", opt.w},
                                               {"b", opt.b},
                                               {"gamma", opt.gamma},
                                               {"forms", opt.forms},
                                               {"mode", opt.mode},
                                               {"samples", opt.samples},
                                               {"seed", opt.seed},
                                               {"scale", opt.scale}});
    const auto tables = tables_for(opt.N);
    MajorantParams mp;
    mp.N = opt.N;
    mp.wtrick = make_wtrick(opt.w, opt.b, opt.N);
    mp.gamma = opt.gamma;
    mp.R = std::pow(static_cast<double>(opt.N), opt.gamma);
    const WeightedSequence nu = gpy_majorant(mp, tables).normalized;
    const LinearFormSystem psi = parse_forms(opt.forms);
    const auto check = finite_complexity_check(psi);
    json& res = report["results"];
    res["finite_complexity"] = check.valid;
    if (!check.valid) {
        res["witness"] = check.witness;
        return {kExitUsage, report};
    }
    const std::int64_t scale = opt.scale > 0 ? opt.scale : max_scale_in_domain(psi, nu);
    res["scale"] = scale;
    if (scale < 1) throw std::domain_error("linforms: no admissible sampling scale");
    const LinformsEstimate est = opt.mode == "exact"
                                     ? linforms_exact(nu, psi, scale)
                                     : linforms_monte_carlo(nu, psi, scale, opt.samples, opt.seed);
    res["estimate"] = to_json(est);
    return {kExitOk, report};
}

RunResult run_vaughan(const VaughanOptions& opt) {
    json report = make_report("vaughan", json{{"N", opt.N}});
    const auto tables = tables_for(opt.N);
    const VaughanTables vt = vaughan_tables(opt.N, tables);
    double max_err = 0;
    std::int64_t argmax = 1;
    for (std::int64_t n = 1; n <= opt.N; ++n) {
        const double err = std::abs(vaughan_reconstruct(n, vt, tables) - von_mangoldt(n, tables));
        if (err > max_err) {
            max_err = err;
            argmax = n;
        }
    }
    json& res = report["results"];
    res["U"] = vt.U;
    res["V"] = vt.V;
    res["max_abs_error"] = max_err;
    res["argmax_n"] = argmax;
    return {kExitOk, report};
}

RunResult run_brun_titchmarsh(const BrunTitchmarshOptions& opt) {
    json report = make_report("brun-titchmarsh",
                              json{{"N", opt.N},
                                   {"w", opt.w},
                                   {"b", opt.b},
                                   {"progressions", opt.progressions},
                                   {"min_length_exponent", opt.min_length_exponent},
                                   {"seed", opt.seed},
                                   {"csv", opt.csv}});
    const auto tables = tables_for(opt.N);
    const auto wt = make_wtrick(opt.w, opt.b, opt.N);
    const std::int64_t n_max = (opt.N - static_cast<std::int64_t>(wt.b)) /
                               static_cast<std::int64_t>(wt.W);
    const std::int64_t min_len = static_cast<std::int64_t>(
        std::ceil(std::pow(static_cast<double>(n_max), opt.min_length_exponent)));
    auto rng = seeded_rng(opt.seed);
    std::vector<std::vector<std::string>> rows;
    double max_ratio = 0, sum_ratio = 0;
    for (int i = 0; i < opt.progressions; ++i) {
        const std::int64_t max_step = std::max<std::int64_t>(1, (n_max - 1) / (min_len - 1));
        std::uniform_int_distribution<std::int64_t> step_d(1, std::min<std::int64_t>(max_step, 32));
        const std::int64_t step = step_d(rng);
        const std::int64_t max_len = (n_max - 1) / step + 1;
        std::uniform_int_distribution<std::int64_t> len_d(min_len, max_len);
        const std::int64_t len = len_d(rng);
        const std::int64_t max_start = n_max - (len - 1) * step;
        std::uniform_int_distribution<std::int64_t> start_d(1, max_start);
        const Progression P{start_d(rng), step, len};
        const double ratio = brun_titchmarsh_ratio(wt, P, tables);
        max_ratio = std::max(max_ratio, ratio);
        sum_ratio += ratio;
        rows.push_back({std::to_string(P.start), std::to_string(P.step), std::to_string(P.length),
                        format_double(ratio)});
    }
    json& res = report["results"];
    res["min_length"] = min_len;
    res["max_ratio"] = max_ratio;
    res["mean_ratio"] = sum_ratio / std::max(1, opt.progressions);
    if (!opt.csv.empty()) write_csv(opt.csv, {"start", "step", "length", "ratio"}, rows);
    return {kExitOk, report};
}

RunResult run_type_ii(const TypeIIOptions& opt) {
    json report = make_report("type-ii", json{{"W", opt.W},
                                              {"b", opt.b},
                                              {"L", opt.L},
                                              {"M", opt.M},
                                              {"phase_freq", opt.phase_freq}});
    const double freq = opt.phase_freq;
    const auto psi = [freq](std::int64_t n) {
        const double t = 2.0 * std::numbers::pi * freq * static_cast<double>(n);
        return cplx{std::cos(t), std::sin(t)};
    };
    report["results"]["value"] = type_ii_bilinear(psi, opt.W, opt.b, opt.L, opt.M);
    return {kExitOk, report};
}

RunResult run_major_arc(const MajorArcOptions& opt) {
    json report = make_report("major-arc", json{{"N", opt.N},
                                                {"w", opt.w},
                                                {"b", opt.b},
                                                {"q", opt.q},
                                                {"min_length", opt.min_length},
                                                {"C", opt.C},
                                                {"eta", opt.eta},
                                                {"phase_coeffs", opt.phase_coeffs}});
    const auto tables = tables_for(opt.N);
    const auto wt = make_wtrick(opt.w, opt.b, opt.N);
    const WeightedSequence f = wtricked_lambda(wt, tables);
    const std::int64_t W = static_cast<std::int64_t>(wt.W);
    const std::int64_t q = opt.q > 0 ? opt.q : 50 * W;
    const ProgressionPartition part = progression_partition(
        opt.N, W, static_cast<std::int64_t>(wt.b), q, opt.min_length);
    PolyPhase psi{opt.phase_coeffs, f.length()};
    const MajorArcReport rep = major_arc_check(f, psi, part, opt.C, opt.eta);
    json& res = report["results"];
    res["lhs"] = rep.lhs;
    res["rhs"] = rep.rhs;
    res["piece_sum"] = rep.piece_sum;
    res["holds"] = rep.holds;
    res["pieces"] = part.pieces.size();
    return {kExitOk, report};
}

RunResult run_endtoend(const EndToEndOptions& opt) {
    json cfg{{"N", opt.N},          {"w", opt.w},   {"k", opt.k},
             {"subset", opt.subset}, {"mod", opt.mod}, {"res", opt.res},
             {"gamma", opt.gamma},  {"dense", dense_cfg_to_json(opt.dense)},
             {"csv", opt.csv}};
    if (opt.b) cfg["b"] = *opt.b;
    json report = make_report("endtoend", cfg);
    json& res = report["results"];

    const auto tables = tables_for(opt.N);

    // subset of the primes up to N
    std::vector<std::int64_t> A;
    for (std::int64_t p : tables.primes) {
        if (p > opt.N) break;
        if (opt.subset == "all" || (opt.subset == "residue" && p % opt.mod == opt.res))
            A.push_back(p);
    }
    res["subset_size"] = A.size();
    res["prime_count"] = tables.primes.size();
    res["delta"] = tables.primes.empty()
                       ? 0.0
                       : static_cast<double>(A.size()) / static_cast<double>(tables.primes.size());

    // W-trick residue: given, or the coprime class with maximal subset mass
    const std::uint64_t W = primorial(opt.w);
    std::uint64_t b = opt.b.value_or(1);
    if (!opt.b) {
        double best = -1;
        for (std::uint64_t cand = 1; cand <= W; ++cand) {
            if (std::gcd(cand, W) != 1) continue;
            double mass = 0;
            for (std::int64_t p : A)
                if (p % static_cast<std::int64_t>(W) == static_cast<std::int64_t>(cand))
                    mass += std::log(static_cast<double>(p));
            if (mass > best) {
                best = mass;
                b = cand;
            }
        }
    }
    res["W"] = W;
    res["b"] = b;
    const auto wt = make_wtrick(opt.w, b, opt.N);

    // f = W-tricked Lambda restricted to the subset
    WeightedSequence f = wtricked_lambda(wt, tables);
    std::vector<std::int64_t> idx;
    for (std::int64_t p : A)
        if (p % static_cast<std::int64_t>(W) == static_cast<std::int64_t>(b) &&
            (p - static_cast<std::int64_t>(b)) / static_cast<std::int64_t>(W) >= 1)
            idx.push_back((p - static_cast<std::int64_t>(b)) / static_cast<std::int64_t>(W));
    f = restrict(f, idx);
    const std::int64_t Np = f.length();
    res["index_domain"] = Np;
    res["mean_f"] = f.mean().real();

    // majorant, rescaled by the achieved majorization constant so f <= nu holds
    MajorantParams mp;
    mp.N = opt.N;
    mp.wtrick = wt;
    mp.gamma = opt.gamma;
    mp.R = std::pow(static_cast<double>(opt.N), opt.gamma);
    const MajorantResult m = gpy_majorant(mp, tables);
    double needed = 1.0;
    for (std::int64_t n = 1; n <= Np; ++n) {
        const double denom = m.normalized.at(n).real();
        if (denom > 0) needed = std::max(needed, f.at(n).real() / denom);
    }
    const double scale_c = needed * (1.0 + 1e-12);
    WeightedSequence nu = scale(m.normalized, scale_c);
    res["majorant_scale"] = scale_c;
    res["u2_norm_nu_minus_1"] =
        interval_norm(m.normalized - ones(Np), Np, 2).root_value;

    const DenseModelResult dm = dense_model(f, nu, opt.dense);
    const ModelQuality q = model_quality(f, dm, opt.dense.k);
    res["dense_model"] = to_json(dm);
    res["quality"] = json{{"distance", q.distance},
                          {"residual_norm", q.residual_norm},
                          {"mean_g", q.mean_g},
                          {"max_g", q.max_g},
                          {"excluded_mass", q.excluded_mass}};

    // counting: exact AP count in the subset, weighted averages, von Neumann gap
    res["ap_count_exact"] = ap_count_exact(A, opt.k);
    const APPattern pattern = APPattern::arithmetic(opt.k);
    std::vector<WeightedSequence> fs(static_cast<std::size_t>(opt.k), f);
    res["ap_average_f"] = ap_average(fs, pattern, Np).real();
    std::vector<WeightedSequence> gs(static_cast<std::size_t>(opt.k), dm.g);
    WeightedSequence nu_vn = nu;
    for (auto& v : nu_vn.values) v = std::max(v.real(), 2.0 + 1e-9);
    const VonNeumannReport vn = von_neumann_gap(fs, gs, nu_vn, pattern, Np);
    res["ap_average_g"] = vn.t_g;
    res["von_neumann"] = json{{"gap", vn.gap},
                              {"max_distance", vn.max_distance},
                              {"distances", vn.distances},
                              {"ratio", vn.ratio_defined ? vn.ratio : 0.0},
                              {"ratio_defined", vn.ratio_defined}};
    if (!opt.csv.empty()) {
        std::string pat = "0";
        for (int i = 1; i < opt.k; ++i) pat += "+" + std::to_string(i);
        write_counting_csv(opt.csv, {{pat + " weighted f", Np, res["ap_average_f"].get<double>()},
                                     {pat + " model g", Np, vn.t_g}});
    }
    return {kExitOk, report};
}

RunResult replay_report(const json& original) {
    const std::string command = original.value("command", "");
    const json& cfg = original.at("config");
    RunResult rerun;
    if (command == "gowers") {
        GowersOptions o;
        o.input = sequence_from_json(cfg.at("input"));
        o.k = cfg.value("k", 2);
        o.both_strategies = cfg.value("both_strategies", false);
        rerun = run_gowers(o);
    } else if (command == "dense-model") {
        DenseModelOptions o;
        o.input = sequence_from_json(cfg.at("input"));
        o.cfg = dense_cfg_from_json(cfg.at("dense"));
        o.majorant_auto = cfg.value("majorant_auto", true);
        if (!o.majorant_auto) o.majorant = sequence_from_json(cfg.at("majorant"));
        rerun = run_dense_model(o);
    } else if (command == "sieve-majorant") {
        SieveMajorantOptions o;
        o.N = cfg.value("N", o.N);
        o.w = cfg.value("w", o.w);
        o.b = cfg.value("b", o.b);
        o.gamma = cfg.value("gamma", o.gamma);
        o.perfect_power_term = cfg.value("perfect_power_term", false);
        o.u2_norm = cfg.value("u2_norm", true);
        rerun = run_sieve_majorant(o);
    } else if (command == "linforms") {
        LinformsOptions o;
        o.N = cfg.value("N", o.N);
        o.w = cfg.value("w", o.w);
        o.b = cfg.value("b", o.b);
        o.gamma = cfg.value("gamma", o.gamma);
        o.forms = cfg.value("forms", o.forms);
        o.mode = cfg.value("mode", o.mode);
        o.samples = cfg.value("samples", o.samples);
        o.seed = cfg.value("seed", o.seed);
        o.scale = cfg.value("scale", o.scale);
        rerun = run_linforms(o);
    } else if (command == "vaughan") {
        VaughanOptions o;
        o.N = cfg.value("N", o.N);
        rerun = run_vaughan(o);
    } else if (command == "brun-titchmarsh") {
        BrunTitchmarshOptions o;
        o.N = cfg.value("N", o.N);
        o.w = cfg.value("w", o.w);
        o.b = cfg.value("b", o.b);
        o.progressions = cfg.value("progressions", o.progressions);
        o.min_length_exponent = cfg.value("min_length_exponent", o.min_length_exponent);
        o.seed = cfg.value("seed", o.seed);
        rerun = run_brun_titchmarsh(o);
    } else if (command == "type-ii") {
        TypeIIOptions o;
        o.W = cfg.value("W", o.W);
        o.b = cfg.value("b", o.b);
        o.L = cfg.value("L", o.L);
        o.M = cfg.value("M", o.M);
        o.phase_freq = cfg.value("phase_freq", o.phase_freq);
        rerun = run_type_ii(o);
    } else if (command == "major-arc") {
        MajorArcOptions o;
        o.N = cfg.value("N", o.N);
        o.w = cfg.value("w", o.w);
        o.b = cfg.value("b", o.b);
        o.q = cfg.value("q", o.q);
        o.min_length = cfg.value("min_length", o.min_length);
        o.C = cfg.value("C", o.C);
        o.eta = cfg.value("eta", o.eta);
        o.phase_coeffs = cfg.value("phase_coeffs", o.phase_coeffs);
        rerun = run_major_arc(o);
    } else if (command == "endtoend") {
        EndToEndOptions o;
        o.N = cfg.value("N", o.N);
        o.w = cfg.value("w", o.w);
        if (cfg.contains("b")) o.b = cfg["b"].get<std::uint64_t>();
        o.k = cfg.value("k", o.k);
        o.subset = cfg.value("subset", o.subset);
        o.mod = cfg.value("mod", o.mod);
        o.res = cfg.value("res", o.res);
        o.gamma = cfg.value("gamma", o.gamma);
        o.dense = dense_cfg_from_json(cfg.at("dense"));
        rerun = run_endtoend(o);
    } else {
        throw std::domain_error("replay: unknown command '" + command + "'");
    }

    std::string mismatch;
    const bool match = reports_match(original.at("results"), rerun.report.at("results"), &mismatch);
    json report = make_report("replay", json{{"command", command}});
    report["results"]["match"] = match;
    if (!match) report["results"]["first_mismatch"] = mismatch;
    return {match ? kExitOk : kExitReplayMismatch, report};
}

}  // namespace aplab
