#include "report.hpp"

#include <cstdio>

namespace attractorlab::cli {

using nlohmann::json;

namespace {

json basin_json(const BasinEvidence& ev) {
    json samples = json::array();
    for (const auto& s : ev.samples)
        samples.push_back({{"point", s.sample},
                           {"min_distance", s.min_distance},
                           {"word_length", static_cast<std::uint64_t>(s.word_length)},
                           {"worst_gap", s.worst_gap},
                           {"attracted", s.attracted}});
    return {{"seed", ev.seed},
            {"epsilon", ev.epsilon},
            {"net_size", static_cast<std::uint64_t>(ev.net_size)},
            {"tested", static_cast<std::uint64_t>(ev.samples.size())},
            {"attracted", static_cast<std::uint64_t>(ev.attracted_count())},
            {"rejected", static_cast<std::uint64_t>(ev.rejected)},
            {"vacuous", ev.vacuous()},
            {"samples", samples}};
}

json limit_json(const LimitPointEvidence& ev) {
    return {{"candidate", ev.candidate},
            {"neighborhood_radius", ev.neighborhood_radius},
            {"samples_tested", static_cast<std::uint64_t>(ev.samples_tested)},
            {"samples_attracted", static_cast<std::uint64_t>(ev.samples_attracted)},
            {"delta", ev.delta},
            {"verdict", to_string(ev.verdict)},
            {"seed", ev.seed},
            {"rejected", static_cast<std::uint64_t>(ev.rejected)}};
}

}  // namespace

std::string hex64(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json to_json(const Box& b) { return {{"lo", b.lo}, {"hi", b.hi}}; }

json to_json(const Certificate& c, const GeneratorSet& gens) {
    return {{"word", c.word.to_string(gens.names())},
            {"word_length", static_cast<std::uint64_t>(c.word.length())},
            {"kind", to_string(c.kind)},
            {"value", c.value},
            {"fixed_point", c.fixed_point}};
}

json to_json(const AttractorReport& r, const GeneratorSet& gens) {
    const AttractorSet& k = r.attractor;
    json att = {{"size", static_cast<std::uint64_t>(k.points.size())}, {"subspace", nullptr}};
    if (k.base) att["base"] = *k.base;
    if (k.window) att["window"] = to_json(*k.window);
    if (k.subspace)
        att["subspace"] = {{"dim", static_cast<std::uint64_t>(k.subspace->dim)},
                           {"base", k.subspace->base},
                           {"basis", k.subspace->basis},
                           {"residual", k.subspace->residual}};
    json out = {{"attractor", att},
                {"certificate", r.certificate ? to_json(*r.certificate, gens) : json(nullptr)},
                {"limit_point", r.limit_point ? limit_json(*r.limit_point) : json(nullptr)},
                {"basin", basin_json(r.basin)},
                {"minimal", r.minimal},
                {"minimality", {{"net_size", static_cast<std::uint64_t>(r.minimality.net_size)},
                                {"pairs_checked", static_cast<std::uint64_t>(r.minimality.pairs_checked)},
                                {"failures", static_cast<std::uint64_t>(r.minimality.failures)},
                                {"worst_gap", r.minimality.worst_gap}}},
                {"global", r.global},
                {"global_evidence", basin_json(r.global_evidence)},
                {"domain", to_json(r.domain)},
                {"sample_invariant", r.sample_invariant},
                {"generator_fingerprint", hex64(r.generator_fingerprint)},
                {"neighborhood_note", r.neighborhood_note}};
    return out;
}

json to_json(const LeafClass& leaf) {
    json witnesses = json::array();
    for (const auto& w : leaf.witnesses) witnesses.push_back({{"at", w.at}, {"nearby", static_cast<std::uint64_t>(w.nearby)}});
    return {{"tag", to_string(leaf.tag)},
            {"orbit_size", static_cast<std::uint64_t>(leaf.orbit_size)},
            {"non_proper", leaf.non_proper},
            {"inconclusive", leaf.inconclusive},
            {"witnesses", witnesses},
            {"witness_count", static_cast<std::uint64_t>(leaf.witness_count)}};
}

json to_json(const FoliationAttractor& fa) {
    return {{"lift", fa.lift},
            {"foliation", fa.foliation},
            {"global", fa.global},
            {"minimal", fa.minimal},
            {"whole_transversal", fa.whole_transversal}};
}

}  // namespace attractorlab::cli
