#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aplab/densemodel.hpp"
#include "aplab/factors.hpp"
#include "aplab/obstructions.hpp"
#include "aplab/sieve.hpp"

namespace aplab {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

json to_json(const GeneratorRecord& g);
json to_json(const Factor& f);
Factor factor_from_json(const json& j);

json to_json(const PolyPhase& p);
PolyPhase phase_from_json(const json& j);

json to_json(const DenseModelIteration& it);
json to_json(const DenseModelResult& r);

json to_json(const LinformsEstimate& e);

/// Skeleton report: schema version, command name, resolved config.
json make_report(const std::string& command, json config);

/// Bit-exact number comparison of two report subtrees (used by replay).
bool reports_match(const json& a, const json& b, std::string* first_mismatch = nullptr);

/// Aligned key/value text rendering of a (flat-ish) results object.
std::string summary_text(const json& report);

void write_text_file(const std::string& path, const std::string& content);

/// CSV with given header row and rows of preformatted cells.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Majorant dump: n, Wn+b, raw value, normalized value.
void write_majorant_csv(const std::string& path, const MajorantResult& m,
                        const MajorantParams& params);

/// Counting table: one (pattern, N, value) row per computed average.
struct CountingRow {
    std::string pattern;
    std::int64_t N = 0;
    double value = 0;
};
void write_counting_csv(const std::string& path, const std::vector<CountingRow>& rows);

std::string format_double(double v);

}  // namespace aplab
