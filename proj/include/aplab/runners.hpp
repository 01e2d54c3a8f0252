#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aplab/report.hpp"

namespace aplab {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitOracleFailure = 10;
inline constexpr int kExitIterationCap = 11;
inline constexpr int kExitEnergyCap = 12;
inline constexpr int kExitReplayMismatch = 13;

struct RunResult {
    int exit_code = kExitOk;
    json report;
};

/// How a command builds its input sequence.
struct SequenceSpec {
    std::string builtin = "ones";  // ones, wlambda, nu, random, random01, phase, cosine, file
    std::int64_t n = 64;
    double w = 3;          // wlambda / nu
    std::uint64_t b = 1;     // wlambda / nu
    double gamma = 1.0 / 12; // nu: R = N^gamma
    std::uint64_t seed = 1;  // random
    bool complex_random = false;
    std::vector<double> phase_coeffs;  // phase
    double cosine_cycles = 3;          // cosine: 1 + cos(2 pi cycles n / n_total)
    std::string file;                  // file: one value (or "re im") per line
};

WeightedSequence build_sequence(const SequenceSpec& spec);
json to_json(const SequenceSpec& spec);
SequenceSpec sequence_from_json(const json& j);

struct GowersOptions {
    SequenceSpec input;
    int k = 2;
    bool both_strategies = false;  // also run the enumeration path and report the delta
};

struct DenseModelOptions {
    SequenceSpec input;
    DenseModelConfig cfg;
    SequenceSpec majorant;     // defaults to a constant chosen to dominate f
    bool majorant_auto = true; // use max(f)+1 constant majorant
};

struct EndToEndOptions {
    std::int64_t N = 100000;
    double w = 3;
    std::optional<std::uint64_t> b;  // default: residue with maximal subset mass
    int k = 3;
    std::string subset = "residue";  // residue|all
    std::int64_t mod = 4;
    std::int64_t res = 1;
    double gamma = 1.0 / 12;
    // desk-scale dense-model defaults: the index-space structure of a residue
    // class of primes carries small-prime biases with correlations around
    // 0.05..0.5, so the oracle threshold sits below them
    EndToEndOptions() {
        dense.epsilon = 0.15;
        dense.theta = 0.04;
        dense.max_iterations = 8;
    }
    DenseModelConfig dense;
    std::string csv;  // optional (pattern, N, value) dump of the averages
};

struct SieveMajorantOptions {
    std::int64_t N = 100000;
    double w = 3;
    std::uint64_t b = 5;
    double gamma = 1.0 / 12;
    bool perfect_power_term = false;
    bool u2_norm = true;  // report ||nu - 1||_{U^2}
    std::string csv;      // optional dump path
};

struct LinformsOptions {
    std::int64_t N = 100000;
    double w = 3;
    std::uint64_t b = 5;
    double gamma = 1.0 / 12;
    // forms as rows "a1,a2,...:c"; default {n, n+m}
    std::vector<std::string> forms = {"1,0:0", "1,1:0"};
    std::string mode = "monte-carlo";  // exact|monte-carlo
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
    std::int64_t scale = 0;  // 0: largest scale that keeps forms in-domain
};

struct VaughanOptions {
    std::int64_t N = 10000;
};

struct BrunTitchmarshOptions {
    std::int64_t N = 100000;
    double w = 3;
    std::uint64_t b = 5;
    int progressions = 50;
    double min_length_exponent = 0.7;
    std::uint64_t seed = 1;
    std::string csv;
};

struct TypeIIOptions {
    std::int64_t W = 2;
    std::int64_t b = 1;
    std::int64_t L = 8;
    std::int64_t M = 8;
    double phase_freq = 0.3;  // psi(n) = e(freq * n)
};

struct MajorArcOptions {
    std::int64_t N = 100000;
    double w = 3;
    std::uint64_t b = 5;
    std::int64_t q = 0;  // step in the original variable; 0: 50*W
    std::int64_t min_length = 64;
    double C = 3;
    double eta = 0.1;
    std::vector<double> phase_coeffs = {0, 0.06};
};

LinearFormSystem parse_forms(const std::vector<std::string>& rows);

RunResult run_gowers(const GowersOptions& opt);
RunResult run_dense_model(const DenseModelOptions& opt);
RunResult run_endtoend(const EndToEndOptions& opt);
RunResult run_sieve_majorant(const SieveMajorantOptions& opt);
RunResult run_linforms(const LinformsOptions& opt);
RunResult run_vaughan(const VaughanOptions& opt);
RunResult run_brun_titchmarsh(const BrunTitchmarshOptions& opt);
RunResult run_type_ii(const TypeIIOptions& opt);
RunResult run_major_arc(const MajorArcOptions& opt);

/// Re-runs a report from its embedded resolved config and compares results
/// bit for bit.
RunResult replay_report(const json& report);

}  // namespace aplab
