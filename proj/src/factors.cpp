#include "aplab/factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace aplab {

std::vector<std::int64_t> Factor::atom_sizes() const {
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(atom_count), 0);
    for (std::int32_t a : atom_of) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
}

Factor trivial_factor(std::int64_t N) {
    if (N < 1) throw std::domain_error("trivial_factor: N must be >= 1");
    Factor f;
    f.N = N;
    f.atom_of.assign(static_cast<std::size_t>(N), 0);
    f.atom_count = 1;
    return f;
}

namespace {
// Upper-closed cell index: j with j < x <= j+1, i.e. ceil(x) - 1.
std::int64_t cell_index(double x) {
    return static_cast<std::int64_t>(std::ceil(x)) - 1;
}
}  // namespace

Factor levelset_factor(const std::vector<double>& h, double K, double t,
                       GeneratorRecord provenance) {
    if (K < 1) throw std::domain_error("levelset_factor: resolution K must be >= 1");
    Factor f;
    f.N = static_cast<std::int64_t>(h.size());
    f.atom_of.resize(h.size());
    std::unordered_map<std::int64_t, std::int32_t> ids;  // sparse cells, compacted on first sight
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!std::isfinite(h[i]))
            throw std::domain_error("levelset_factor: h must be finite-valued");
        const std::int64_t cell = cell_index(K * (h[i] - t));
        auto [it, fresh] = ids.emplace(cell, static_cast<std::int32_t>(ids.size()));
        (void)fresh;
        f.atom_of[i] = it->second;
    }
    f.atom_count = static_cast<std::int32_t>(ids.size());
    provenance.resolution = K;
    provenance.shift = t;
    f.provenance.push_back(std::move(provenance));
    return f;
}

Factor join(const Factor& a, const Factor& b) {
    if (a.N != b.N) throw std::domain_error("join: factors live on different [N]");
    Factor f;
    f.N = a.N;
    f.atom_of.resize(a.atom_of.size());
    std::unordered_map<std::int64_t, std::int32_t> ids;
    const std::int64_t width = b.atom_count;
    for (std::size_t i = 0; i < a.atom_of.size(); ++i) {
        const std::int64_t key = static_cast<std::int64_t>(a.atom_of[i]) * width + b.atom_of[i];
        auto [it, fresh] = ids.emplace(key, static_cast<std::int32_t>(ids.size()));
        (void)fresh;
        f.atom_of[i] = it->second;
    }
    f.atom_count = static_cast<std::int32_t>(ids.size());
    f.provenance = a.provenance;
    f.provenance.insert(f.provenance.end(), b.provenance.begin(), b.provenance.end());
    return f;
}

Factor join(const std::vector<Factor>& factors) {
    if (factors.empty()) throw std::domain_error("join: empty factor list");
    Factor f = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) f = join(f, factors[i]);
    return f;
}

bool refines(const Factor& fine, const Factor& coarse) {
    if (fine.N != coarse.N) return false;
    std::vector<std::int32_t> image(static_cast<std::size_t>(fine.atom_count), -1);
    for (std::size_t i = 0; i < fine.atom_of.size(); ++i) {
        std::int32_t& img = image[static_cast<std::size_t>(fine.atom_of[i])];
        if (img == -1)
            img = coarse.atom_of[i];
        else if (img != coarse.atom_of[i])
            return false;
    }
    return true;
}

namespace {
void check_domain(const WeightedSequence& f, const Factor& B, const char* who) {
    if (f.offset != 1 || f.length() != B.N)
        throw std::domain_error(std::string(who) + ": sequence domain must be [N] of the factor");
}
}  // namespace

WeightedSequence cond_expect(const WeightedSequence& f, const Factor& B) {
    check_domain(f, B, "cond_expect");
    std::vector<cplx> atom_sum(static_cast<std::size_t>(B.atom_count), cplx{});
    std::vector<std::int64_t> atom_n(static_cast<std::size_t>(B.atom_count), 0);
    std::vector<cplx> atom_first(static_cast<std::size_t>(B.atom_count), cplx{});
    std::vector<bool> atom_const(static_cast<std::size_t>(B.atom_count), true);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const std::size_t a = static_cast<std::size_t>(B.atom_of[i]);
        atom_sum[a] += f.values[i];
        if (atom_n[a] == 0)
            atom_first[a] = f.values[i];
        else if (f.values[i] != atom_first[a])
            atom_const[a] = false;
        ++atom_n[a];
    }
    // The mean of a constant atom is that constant; taking the shortcut makes
    // the projection exactly idempotent.
    WeightedSequence g{1, std::vector<cplx>(f.values.size())};
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const std::size_t a = static_cast<std::size_t>(B.atom_of[i]);
        g.values[i] = atom_const[a] ? atom_first[a] : atom_sum[a] / static_cast<double>(atom_n[a]);
    }
    return g;
}

double energy(const WeightedSequence& f, const Factor& B) {
    const WeightedSequence p = cond_expect(f, B);
    double s = 0;
    for (const cplx& v : p.values) s += std::norm(v);
    return s / static_cast<double>(B.N);
}

double pythagoras_residual(const WeightedSequence& f, const Factor& B, const Factor& B_refined) {
    check_domain(f, B, "pythagoras_residual");
    if (!refines(B_refined, B))
        throw std::domain_error("pythagoras_residual: second factor does not refine the first");
    const WeightedSequence pc = cond_expect(f, B);
    const WeightedSequence pf = cond_expect(f, B_refined);
    double e_coarse = 0, e_fine = 0, e_diff = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        e_coarse += std::norm(pc.values[i]);
        e_fine += std::norm(pf.values[i]);
        e_diff += std::norm(pf.values[i] - pc.values[i]);
    }
    return (e_fine - e_coarse - e_diff) / static_cast<double>(B.N);
}

RegularityReport regularity_score(const std::vector<double>& h, double K) {
    RegularityReport rep;
    const std::int64_t N = static_cast<std::int64_t>(h.size());
    if (N == 0) return rep;
    std::vector<double> dist(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = K * h[i];
        dist[i] = std::abs(x - std::round(x));  // ||K h(n)||_T
        if (dist[i] <= 1e-12) ++rep.zero_hits;
    }
    if (rep.zero_hits > 0) {
        rep.score = std::numeric_limits<double>::infinity();
        rep.argmax_radius = 0;
        return rep;
    }
    // The counting function is a right-continuous step function of r, so the
    // sup of count/(2rN) over r > 0 is attained at the jump radii.
    std::sort(dist.begin(), dist.end());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (i + 1 < dist.size() && dist[i + 1] == dist[i]) continue;  // count at the last tie
        const double r = dist[i];
        const double val = static_cast<double>(i + 1) / (2.0 * r * static_cast<double>(N));
        if (val > rep.score) {
            rep.score = val;
            rep.argmax_radius = r;
        }
    }
    return rep;
}

ShiftSearchResult regular_shift(const std::vector<double>& h, double K, double C, int m) {
    if (m < 1) throw std::domain_error("regular_shift: grid size m must be >= 1");
    ShiftSearchResult res;
    res.best_score = std::numeric_limits<double>::infinity();
    std::vector<double> shifted(h.size());
    for (int i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / (static_cast<double>(m) * K);
        for (std::size_t j = 0; j < h.size(); ++j) shifted[j] = h[j] - t;
        const double score = regularity_score(shifted, K).score;
        if (score < res.best_score) {
            res.best_score = score;
            res.best_t = t;
        }
        if (!res.found && score <= C) {
            res.found = true;
            res.t = t;
            res.score = score;
        }
    }
    return res;
}

OmegaResult small_atom_omega(const WeightedSequence& f, const Factor& B, double eta) {
    check_domain(f, B, "small_atom_omega");
    if (eta <= 0) throw std::domain_error("small_atom_omega: eta must be positive");
    std::vector<double> atom_mass(static_cast<std::size_t>(B.atom_count), 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        atom_mass[static_cast<std::size_t>(B.atom_of[i])] += f.values[i].real() + 1.0;
    const double invN = 1.0 / static_cast<double>(B.N);
    OmegaResult out;
    out.mask.assign(f.values.size(), false);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double mass = atom_mass[static_cast<std::size_t>(B.atom_of[i])] * invN;
        if (mass > eta) {
            out.mask[i] = true;
            ++out.omega_size;
        } else {
            out.excluded_mass += (f.values[i].real() + 1.0) * invN;
        }
    }
    return out;
}

}  // namespace aplab
