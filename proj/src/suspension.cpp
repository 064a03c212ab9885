#include "attractorlab/suspension.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "attractorlab/error.hpp"
#include "attractorlab/orbit.hpp"
#include "attractorlab/spatial_hash.hpp"

namespace attractorlab {

namespace {
constexpr std::size_t kStoredWitnesses = 16;
}

Presentation surface_presentation(std::size_t m, std::size_t first_index) {
    Presentation p;
    std::vector<Letter> relator;
    for (std::size_t i = 0; i < m; ++i) {
        const auto a = static_cast<std::uint32_t>(2 * i);
        const auto b = a + 1;
        p.generators.push_back("a" + std::to_string(first_index + i));
        p.generators.push_back("b" + std::to_string(first_index + i));
        relator.insert(relator.end(), {Letter{a, 1}, Letter{b, 1}, Letter{a, -1}, Letter{b, -1}});
    }
    if (m > 0) p.relators.emplace_back(relator);
    return p;
}

Presentation free_presentation(std::size_t rank) {
    if (rank == 0) throw InvalidArgument("free_presentation: rank must be >= 1");
    Presentation p;
    for (std::size_t i = 1; i <= rank; ++i) p.generators.push_back("g" + std::to_string(i));
    return p;
}

const AffineMap& Representation::image(const std::string& generator) const {
    const auto it = std::find(presentation.generators.begin(), presentation.generators.end(), generator);
    if (it == presentation.generators.end()) throw BadIndex("no generator named " + generator);
    return images[static_cast<std::size_t>(it - presentation.generators.begin())];
}

Representation build_representation(const Presentation& p, const std::map<std::string, AffineMap>& assignment, double tol) {
    Representation rep;
    rep.presentation = p;
    for (const auto& name : p.generators) {
        const auto it = assignment.find(name);
        if (it == assignment.end()) throw InvalidArgument("assignment is missing generator " + name);
        if (rep.images.empty())
            rep.dim = it->second.dim();
        else if (it->second.dim() != rep.dim)
            throw DimensionMismatch("assignment for " + name + " has dimension " + std::to_string(it->second.dim()) + ", expected " +
                                    std::to_string(rep.dim));
        rep.images.push_back(it->second);
    }
    for (const auto& [name, map] : assignment)
        if (std::find(p.generators.begin(), p.generators.end(), name) == p.generators.end())
            throw InvalidArgument("assignment names unknown generator " + name);
    if (p.relators.empty()) return rep;

    std::vector<std::pair<std::string, AffineMap>> named;
    for (std::size_t i = 0; i < p.rank(); ++i) named.emplace_back(p.generators[i], rep.images[i]);
    const GeneratorSet gens(rep.dim, std::move(named));
    for (const auto& r : p.relators) {
        const double residual = evaluate_word(r, gens).max_abs_diff(AffineMap::identity(rep.dim));
        rep.max_relator_residual = std::max(rep.max_relator_residual, residual);
        if (!(residual <= tol)) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3g", residual);
            throw RelatorViolated("relator " + r.to_string(p.generators) + " evaluates to a map at distance " + buf +
                                  " from the identity");
        }
    }
    return rep;
}

std::string BaseDescriptor::to_string() const { return (kind == Kind::Surface ? "surface " : "free ") + std::to_string(count); }

BaseDescriptor BaseDescriptor::parse(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    long long count = -1;
    std::string rest;
    if (!(in >> kind >> count) || (in >> rest) || count < 0 || (kind != "surface" && kind != "free"))
        throw InvalidArgument("base descriptor must be \"surface m\" or \"free r\", got \"" + text + "\"");
    if (kind == "free" && count == 0) throw InvalidArgument("free base needs rank >= 1");
    return {kind == "surface" ? Kind::Surface : Kind::Free, static_cast<std::size_t>(count)};
}

std::string SuspendedFoliation::label() const {
    return "Sus(R^" + std::to_string(transversal_dim) + ", " + base.to_string() + ", rho)";
}

SuspendedFoliation suspend(const Representation& rep, const BaseDescriptor& base) {
    const std::size_t expected = base.kind == BaseDescriptor::Kind::Surface ? 2 * base.count : base.count;
    if (expected != rep.presentation.rank())
        throw InvalidArgument("base " + base.to_string() + " needs " + std::to_string(expected) + " generators, representation has " +
                              std::to_string(rep.presentation.rank()));
    SuspendedFoliation fol;
    fol.representation = rep;
    fol.base = base;
    fol.transversal_dim = rep.dim;
    fol.codimension = rep.dim;
    fol.truncation_rank = rep.presentation.rank();

    std::vector<std::pair<std::string, AffineMap>> kept;
    for (std::size_t i = 0; i < rep.images.size(); ++i) {
        const AffineMap& f = rep.images[i];
        if (f.is_identity()) continue;
        if (std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return k.second == f; })) continue;
        kept.emplace_back(rep.presentation.generators[i], f);
    }
    fol.holonomy = GeneratorSet(rep.dim, std::move(kept));
    return fol;
}

std::string to_string(LeafTag t) {
    switch (t) {
        case LeafTag::Periodic: return "Periodic";
        case LeafTag::ClosedDiscrete: return "ClosedDiscrete";
        case LeafTag::Accumulating: return "Accumulating";
    }
    return "Accumulating";
}

LeafClass classify_leaf(const SuspendedFoliation& fol, std::span<const double> t, std::size_t budget, double dedup_eps,
                        std::size_t point_cap) {
    if (t.size() != fol.transversal_dim) throw DimensionMismatch("classify_leaf: point dimension differs from transversal");
    LeafClass out;
    if (fol.holonomy.rank() == 0) {
        out.tag = LeafTag::Periodic;
        out.orbit_size = 1;
        return out;
    }

    OrbitOptions oo;
    oo.max_len = budget;
    oo.dedup_eps = dedup_eps;
    oo.point_cap = point_cap;
    oo.record_near_merges = true;
    oo.throw_on_cap = false;
    const OrbitSample sample = orbit(t, fol.holonomy, oo);
    out.orbit_size = sample.entries.size();
    out.inconclusive = sample.truncated;

    if (sample.closed && sample.escapes == 0 && sample.near_merges.empty() && !sample.truncated) {
        out.tag = LeafTag::Periodic;
        return out;
    }

    // Distinct orbit points: the deduplicated sample plus every candidate that
    // dedup merged without being a numerical coincidence.
    const double radius = 10.0 * dedup_eps;
    PointIndex all(fol.transversal_dim, radius);
    for (const auto& e : sample.entries) all.insert(e.point);
    for (const auto& m : sample.near_merges) all.insert(m.point);

    PointIndex claimed(fol.transversal_dim, radius);
    auto visit = [&](std::span<const double> s) {
        if (claimed.any_within(s, radius)) return;
        std::size_t nearby = 0;
        all.for_each_within(s, radius, [&](std::size_t, double) { ++nearby; });
        if (nearby >= 3) {
            claimed.insert(s);
            if (out.witnesses.size() < kStoredWitnesses) out.witnesses.push_back({Point(s.begin(), s.end()), nearby});
            ++out.witness_count;
        }
    };
    for (const auto& m : sample.near_merges) visit(m.point);
    for (const auto& e : sample.entries) visit(e.point);

    if (out.witness_count > 0) {
        out.tag = LeafTag::Accumulating;
        std::size_t near_t = 0;
        all.for_each_within(t, radius, [&](std::size_t, double) { ++near_t; });
        out.non_proper = near_t >= 3;
    } else if (sample.closed) {
        out.tag = LeafTag::ClosedDiscrete;
    } else {
        // Budget ran out with new points still appearing but no accumulation
        // seen; the discrete/accumulating distinction is undecided.
        out.tag = LeafTag::Accumulating;
        out.inconclusive = true;
    }
    return out;
}

FoliationAttractor lift_attractor(const SuspendedFoliation& fol, const AttractorReport& report) {
    if (report.generator_fingerprint != fol.holonomy.fingerprint())
        throw MismatchedGroup("attractor report was produced from a different generator set than this foliation's holonomy group");
    FoliationAttractor fa;
    fa.transversal = report;
    fa.foliation = fol.label();
    fa.lift = "M = kappa(r^-1(K)) in " + fa.foliation;
    fa.global = report.global;
    fa.minimal = report.minimal;
    fa.whole_transversal = report.attractor.subspace && report.attractor.subspace->dim == fol.transversal_dim;
    return fa;
}

}  // namespace attractorlab
