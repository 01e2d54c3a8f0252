#include "aplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace aplab {

json to_json(const GeneratorRecord& g) {
    return json{{"resolution", g.resolution},
                {"shift", g.shift},
                {"source", g.source},
                {"coefficients", g.coefficients}};
}

json to_json(const Factor& f) {
    json prov = json::array();
    for (const auto& g : f.provenance) prov.push_back(to_json(g));
    return json{{"N", f.N}, {"atom_of", f.atom_of}, {"atom_count", f.atom_count},
                {"provenance", prov}};
}

Factor factor_from_json(const json& j) {
    Factor f;
    f.N = j.at("N").get<std::int64_t>();
    f.atom_of = j.at("atom_of").get<std::vector<std::int32_t>>();
    f.atom_count = j.at("atom_count").get<std::int32_t>();
    for (const auto& g : j.value("provenance", json::array())) {
        GeneratorRecord rec;
        rec.resolution = g.value("resolution", 0.0);
        rec.shift = g.value("shift", 0.0);
        rec.source = g.value("source", "");
        rec.coefficients = g.value("coefficients", std::vector<double>{});
        f.provenance.push_back(std::move(rec));
    }
    return f;
}

json to_json(const PolyPhase& p) {
    return json{{"coefficients", p.coefficients}, {"domain_scale", p.domain_scale}};
}

PolyPhase phase_from_json(const json& j) {
    PolyPhase p;
    p.coefficients = j.at("coefficients").get<std::vector<double>>();
    p.domain_scale = j.value("domain_scale", std::int64_t{0});
    return p;
}

json to_json(const DenseModelIteration& it) {
    return json{{"iteration", it.iteration},
                {"residual_norm", it.residual_norm},
                {"phase_found", it.phase_found},
                {"phase_coefficients", it.phase_coefficients},
                {"correlation", it.correlation},
                {"shift", it.shift},
                {"regularity", it.regularity},
                {"regularity_met", it.regularity_met},
                {"energy_before", it.energy_before},
                {"energy_after", it.energy_after},
                {"atoms_after", it.atoms_after},
                {"omega_size", it.omega_size},
                {"excluded_mass", it.excluded_mass}};
}

json to_json(const DenseModelResult& r) {
    json trace = json::array();
    for (const auto& it : r.trace) trace.push_back(to_json(it));
    return json{{"outcome", to_string(r.outcome)},
                {"residual_norm", r.residual_norm},
                {"excluded_mass", r.excluded_mass},
                {"clamp_violations", r.clamp_violations},
                {"refinements", r.refinements},
                {"atoms", r.factor.atom_count},
                {"trace", trace}};
}

json to_json(const LinformsEstimate& e) {
    return json{{"estimate", e.estimate},
                {"stderr", e.stderr_},
                {"out_of_domain_fraction", e.out_of_domain_fraction},
                {"samples", e.samples}};
}

json make_report(const std::string& command, json config) {
    return json{{"schema_version", kSchemaVersion}, {"command", command},
                {"config", std::move(config)}, {"results", json::object()}};
}

bool reports_match(const json& a, const json& b, std::string* first_mismatch) {
    if (a == b) return true;
    if (first_mismatch) {
        // descend to the first differing key for the error message
        if (a.is_object() && b.is_object()) {
            for (auto it = a.begin(); it != a.end(); ++it) {
                if (!b.contains(it.key())) {
                    *first_mismatch = it.key() + " missing";
                    return false;
                }
                std::string sub;
                if (!reports_match(it.value(), b.at(it.key()), &sub)) {
                    *first_mismatch = it.key() + (sub.empty() ? "" : "." + sub);
                    return false;
                }
            }
            *first_mismatch = "extra keys";
            return false;
        }
        *first_mismatch = a.dump() + " != " + b.dump();
    }
    return false;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string summary_text(const json& report) {
    std::ostringstream out;
    out << report.value("command", "?") << " report (schema " << report.value("schema_version", "?")
        << ")\n";
    const auto render = [&](const json& obj, const std::string& indent, auto&& self) -> void {
        std::size_t width = 0;
        for (auto it = obj.begin(); it != obj.end(); ++it)
            width = std::max(width, it.key().size());
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it.value().is_object()) {
                out << indent << it.key() << ":\n";
                self(it.value(), indent + "  ", self);
            } else if (it.value().is_array() && it.key() == "trace") {
                out << indent << "trace: " << it.value().size() << " iterations\n";
            } else {
                out << indent << it.key() << std::string(width - it.key().size() + 1, ' ')
                    << it.value().dump() << "\n";
            }
        }
    };
    if (report.contains("results")) render(report["results"], "  ", render);
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
}

void write_counting_csv(const std::string& path, const std::vector<CountingRow>& rows) {
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows)
        cells.push_back({r.pattern, std::to_string(r.N), format_double(r.value)});
    write_csv(path, {"pattern", "N", "value"}, cells);
}

void write_majorant_csv(const std::string& path, const MajorantResult& m,
                        const MajorantParams& params) {
    std::vector<std::vector<std::string>> rows;
    const std::int64_t W = static_cast<std::int64_t>(params.wtrick.W);
    const std::int64_t b = static_cast<std::int64_t>(params.wtrick.b);
    for (std::int64_t n = m.raw.first(); n <= m.raw.last(); ++n)
        rows.push_back({std::to_string(n), std::to_string(W * n + b),
                        format_double(m.raw.at(n).real()),
                        format_double(m.normalized.at(n).real())});
    write_csv(path, {"n", "Wn_plus_b", "raw", "normalized"}, rows);
}

}  // namespace aplab
