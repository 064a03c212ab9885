#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "attractorlab/error.hpp"
#include "json.hpp"
#include "json_out.hpp"

namespace attractorlab::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ParseError(key + ": " + what); }

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) fail(path.empty() ? k : path + "." + k, "unknown key");
}

const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path.empty() ? key : path + "." + key, "missing required key");
    return obj.at(key);
}

double as_double(const json& v, const std::string& key) {
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
}

std::uint64_t as_uint(const json& v, const std::string& key) {
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        fail(key, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> as_vector(const json& v, const std::string& key, std::size_t n) {
    if (!v.is_array() || v.size() != n) fail(key, "expected an array of " + std::to_string(n) + " numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_double(v[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::vector<double>> as_matrix(const json& v, const std::string& key, std::size_t n) {
    if (!v.is_array() || v.size() != n) fail(key, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(as_vector(v[i], key + "[" + std::to_string(i) + "]", n));
    return out;
}

struct SizeField {
    const char* key;
    std::size_t DetectParams::*member;
    std::size_t min;
};

struct RealField {
    const char* key;
    double DetectParams::*member;
};

constexpr SizeField kSizeFields[] = {
    {"attractor_len", &DetectParams::attractor_len, 0},   {"certificate_len", &DetectParams::certificate_len, 1},
    {"fallback_len", &DetectParams::fallback_len, 0},     {"limit_samples", &DetectParams::limit_samples, 1},
    {"n_samples", &DetectParams::n_samples, 1},           {"node_cap", &DetectParams::node_cap, 1},
    {"orbit_len", &DetectParams::orbit_len, 1},           {"point_cap", &DetectParams::point_cap, 1},
};

constexpr RealField kRealFields[] = {
    {"approach_tol", &DetectParams::approach_tol}, {"dedup_eps", &DetectParams::dedup_eps},
    {"epsilon", &DetectParams::epsilon},           {"limit_delta", &DetectParams::limit_delta},
    {"limit_radius", &DetectParams::limit_radius}, {"neighborhood_radius", &DetectParams::neighborhood_radius},
    {"net_radius", &DetectParams::net_radius},     {"residual_tol", &DetectParams::residual_tol},
    {"tol_cert", &DetectParams::tol_cert},
};

DetectParams parse_params(const json& j, std::size_t dim) {
    if (!j.is_object()) fail("params", "expected an object");
    DetectParams p;
    std::set<std::string> known{"seed", "domain"};
    for (const auto& f : kSizeFields) known.insert(f.key);
    for (const auto& f : kRealFields) known.insert(f.key);
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) fail("params." + k, "unknown key");

    for (const auto& f : kSizeFields) {
        if (!j.contains(f.key)) continue;
        const std::string key = std::string("params.") + f.key;
        const auto v = as_uint(j.at(f.key), key);
        if (v < f.min) fail(key, "must be >= " + std::to_string(f.min));
        p.*(f.member) = static_cast<std::size_t>(v);
    }
    for (const auto& f : kRealFields) {
        if (!j.contains(f.key)) continue;
        const std::string key = std::string("params.") + f.key;
        const double v = as_double(j.at(f.key), key);
        if (!(v > 0.0)) fail(key, "must be positive");
        if (std::string(f.key) == "tol_cert" && !(v < 1.0)) fail(key, "must be below 1");
        p.*(f.member) = v;
    }
    if (j.contains("seed")) p.seed = as_uint(j.at("seed"), "params.seed");
    if (j.contains("domain")) {
        const json& d = j.at("domain");
        if (!d.is_object()) fail("params.domain", "expected an object with lo and hi");
        reject_unknown(d, "params.domain", {"hi", "lo"});
        Box b{as_vector(require(d, "params.domain", "lo"), "params.domain.lo", dim),
              as_vector(require(d, "params.domain", "hi"), "params.domain.hi", dim)};
        for (std::size_t i = 0; i < dim; ++i)
            if (!(b.lo[i] <= b.hi[i])) fail("params.domain", "lo exceeds hi on axis " + std::to_string(i));
        p.domain = std::move(b);
    }
    if (!(p.limit_radius > p.limit_delta)) fail("params.limit_radius", "must exceed limit_delta");
    return p;
}

json params_json(const DetectParams& p) {
    json j = json::object();
    for (const auto& f : kSizeFields) j[f.key] = static_cast<std::uint64_t>(p.*(f.member));
    for (const auto& f : kRealFields) j[f.key] = p.*(f.member);
    j["seed"] = p.seed;
    if (p.domain) j["domain"] = {{"lo", p.domain->lo}, {"hi", p.domain->hi}};
    return j;
}

const std::set<std::string> kOutcomes{"no-attractor", "attractor", "global-attractor", "minimal-global-attractor"};

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("<document>: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("<document>", "expected a JSON object");
    reject_unknown(j, "", {"dim", "expected", "generators", "id", "params", "schema_version", "suspension"});

    Scenario s;
    const auto version = as_uint(require(j, "", "schema_version"), "schema_version");
    if (version != 1) fail("schema_version", "unsupported version " + std::to_string(version));
    s.id = as_string(require(j, "", "id"), "id");
    if (s.id.empty()) fail("id", "must be nonempty");
    s.dim = as_uint(require(j, "", "dim"), "dim");
    if (s.dim == 0) fail("dim", "must be >= 1");

    const json& gens = require(j, "", "generators");
    if (!gens.is_array()) fail("generators", "expected an array");
    std::set<std::string> names;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string key = "generators[" + std::to_string(i) + "]";
        const json& g = gens[i];
        if (!g.is_object()) fail(key, "expected an object");
        reject_unknown(g, key, {"linear", "name", "translation"});
        GeneratorSpec gen;
        gen.name = as_string(require(g, key, "name"), key + ".name");
        const bool identifier = !gen.name.empty() && !std::isdigit(static_cast<unsigned char>(gen.name[0])) &&
                                std::all_of(gen.name.begin(), gen.name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
        if (!identifier || gen.name == "identity") fail(key + ".name", "generator names must be identifiers other than identity");
        if (!names.insert(gen.name).second) fail(key + ".name", "duplicate generator name " + gen.name);
        gen.linear = as_matrix(require(g, key, "linear"), key + ".linear", s.dim);
        gen.translation = as_vector(require(g, key, "translation"), key + ".translation", s.dim);
        try {
            AffineMap(Matrix::from_rows(gen.linear), gen.translation);
        } catch (const Error& e) {
            fail(key + ".linear", e.what());
        }
        s.generators.push_back(std::move(gen));
    }

    if (j.contains("suspension")) {
        const json& sj = j.at("suspension");
        if (!sj.is_object()) fail("suspension", "expected an object");
        reject_unknown(sj, "suspension", {"assignment", "base", "first_index"});
        SuspensionSpec sp;
        sp.base = as_string(require(sj, "suspension", "base"), "suspension.base");
        try {
            BaseDescriptor::parse(sp.base);
        } catch (const Error& e) {
            fail("suspension.base", e.what());
        }
        if (sj.contains("first_index")) sp.first_index = as_uint(sj.at("first_index"), "suspension.first_index");
        const json& a = require(sj, "suspension", "assignment");
        if (!a.is_object()) fail("suspension.assignment", "expected an object");
        for (const auto& [k, v] : a.items()) {
            const std::string target = as_string(v, "suspension.assignment." + k);
            if (target != "identity" && !names.count(target)) fail("suspension.assignment." + k, "undefined generator " + target);
            sp.assignment[k] = target;
        }
        s.suspension = std::move(sp);
    }

    if (j.contains("params")) s.params = parse_params(j.at("params"), s.dim);

    if (j.contains("expected")) {
        const json& e = j.at("expected");
        if (!e.is_object()) fail("expected", "expected an object");
        reject_unknown(e, "expected", {"fit_dim", "outcome"});
        Expectation ex;
        ex.outcome = as_string(require(e, "expected", "outcome"), "expected.outcome");
        if (!kOutcomes.count(ex.outcome)) fail("expected.outcome", "unknown outcome tag " + ex.outcome);
        if (e.contains("fit_dim")) ex.fit_dim = as_uint(e.at("fit_dim"), "expected.fit_dim");
        s.expected = ex;
    }

    if (s.suspension) {
        // Validate the suspension eagerly so a bad assignment is a parse error.
        try {
            foliation(s);
        } catch (const RelatorViolated&) {
            throw;
        } catch (const Error& e) {
            fail("suspension", e.what());
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    json j = json::object();
    j["schema_version"] = s.schema_version;
    j["id"] = s.id;
    j["dim"] = static_cast<std::uint64_t>(s.dim);
    json gens = json::array();
    for (const auto& g : s.generators) gens.push_back({{"name", g.name}, {"linear", g.linear}, {"translation", g.translation}});
    j["generators"] = gens;
    if (s.suspension) {
        json a = json::object();
        for (const auto& [k, v] : s.suspension->assignment) a[k] = v;
        j["suspension"] = {{"base", s.suspension->base},
                           {"first_index", static_cast<std::uint64_t>(s.suspension->first_index)},
                           {"assignment", a}};
    }
    j["params"] = params_json(s.params);
    if (s.expected) {
        json e = {{"outcome", s.expected->outcome}};
        if (s.expected->fit_dim) e["fit_dim"] = static_cast<std::uint64_t>(*s.expected->fit_dim);
        j["expected"] = e;
    }
    return dump_canonical(j);
}

GeneratorSet generator_set(const Scenario& s) {
    std::vector<std::pair<std::string, AffineMap>> gens;
    for (const auto& g : s.generators) gens.emplace_back(g.name, AffineMap(Matrix::from_rows(g.linear), g.translation));
    return GeneratorSet(s.dim, std::move(gens));
}

SuspendedFoliation foliation(const Scenario& s) {
    const GeneratorSet gens = generator_set(s);
    if (!s.suspension) {
        if (gens.rank() == 0) throw InvalidArgument("a scenario without generators has no free suspension");
        const Presentation p = free_presentation(gens.rank());
        std::map<std::string, AffineMap> assignment;
        for (std::size_t i = 0; i < gens.rank(); ++i) assignment.emplace(p.generators[i], gens.map(i));
        return suspend(build_representation(p, assignment), BaseDescriptor{BaseDescriptor::Kind::Free, gens.rank()});
    }
    const BaseDescriptor base = BaseDescriptor::parse(s.suspension->base);
    Presentation p = base.kind == BaseDescriptor::Kind::Surface ? surface_presentation(base.count, s.suspension->first_index)
                                                                : free_presentation(base.count);
    if (base.kind == BaseDescriptor::Kind::Free && s.suspension->first_index != 1)
        for (std::size_t i = 0; i < p.generators.size(); ++i) p.generators[i] = "g" + std::to_string(s.suspension->first_index + i);
    std::map<std::string, AffineMap> assignment;
    for (const auto& [gen, target] : s.suspension->assignment) {
        if (target == "identity") {
            assignment.emplace(gen, AffineMap::identity(s.dim));
            continue;
        }
        const auto& names = gens.names();
        const auto idx = static_cast<std::size_t>(std::find(names.begin(), names.end(), target) - names.begin());
        assignment.emplace(gen, gens.map(idx));
    }
    return suspend(build_representation(p, assignment), base);
}

GeneratorSet working_group(const Scenario& s) { return s.suspension ? foliation(s).holonomy : generator_set(s); }

}  // namespace attractorlab::cli
