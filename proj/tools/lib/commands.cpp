#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "attractorlab/error.hpp"
#include "attractorlab/orbit.hpp"
#include "json_out.hpp"
#include "report.hpp"

namespace attractorlab::cli {

using nlohmann::json;

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& text, double& v) {
    const std::string t = trim(text);
    if (t.empty()) return false;
    char* end = nullptr;
    v = std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && std::isfinite(v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const CommandOptions& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError(o.out + ": cannot open output file");
    f << text;
}

Scenario scenario_from(const CommandOptions& o) {
    if (o.scenario.empty()) throw ParseError("--scenario: a scenario file is required");
    return load_scenario(o.scenario);
}

DetectParams effective_params(const Scenario& s, const CommandOptions& o) {
    DetectParams p = s.params;
    if (o.seed) p.seed = *o.seed;
    p.threads = std::max(1u, o.threads);
    return p;
}

json header(const char* command, const Scenario& s, std::uint64_t seed) {
    return {{"command", command}, {"engine_version", kEngineVersion}, {"scenario", s.id}, {"seed", seed}};
}

// Maps exceptions onto the exit-code contract.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

struct DetectRun {
    std::optional<AttractorReport> report;
    json body;
};

DetectRun run_detection(const Scenario& s, const DetectParams& p) {
    const GeneratorSet gens = working_group(s);
    DetectRun run;
    run.report = detect_attractor(gens, p);
    run.body["outcome"] = outcome_tag(run.report);
    run.body["result"] = run.report ? to_json(*run.report, gens) : json(nullptr);
    run.body["foliation"] = nullptr;
    if (s.suspension) {
        const SuspendedFoliation fol = foliation(s);
        json f = {{"label", fol.label()},
                  {"codimension", static_cast<std::uint64_t>(fol.codimension)},
                  {"truncation_rank", static_cast<std::uint64_t>(fol.truncation_rank)},
                  {"relator_residual", fol.representation.max_relator_residual},
                  {"attractor", nullptr}};
        if (run.report) f["attractor"] = to_json(lift_attractor(fol, *run.report));
        run.body["foliation"] = f;
    }
    return run;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string outcome_tag(const std::optional<AttractorReport>& r) {
    if (!r) return "no-attractor";
    if (r->global && r->minimal) return "minimal-global-attractor";
    if (r->global) return "global-attractor";
    return "attractor";
}

bool matches(const Expectation& e, const std::optional<AttractorReport>& r) {
    if (outcome_tag(r) != e.outcome) return false;
    if (e.fit_dim) return r && r->attractor.subspace && r->attractor.subspace->dim == *e.fit_dim;
    return true;
}

std::string orbit_csv(const OrbitSample& sample, const GeneratorSet& gens) {
    std::string out;
    for (std::size_t i = 1; i <= gens.dim(); ++i) out += "x" + std::to_string(i) + ",";
    out += "word,len\n";
    for (const auto& e : sample.entries) {
        for (double x : e.point) out += format_double(x) + ",";
        out += e.word.to_string(gens.names()) + "," + std::to_string(e.word.length()) + "\n";
    }
    return out;
}

std::vector<Point> parse_points(const std::string& text, std::size_t dim) {
    std::vector<Point> pts;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split(t, ',');
        Point p;
        bool numeric = true;
        for (const auto& f : fields) {
            double v;
            if (!parse_number(f, v)) {
                numeric = false;
                break;
            }
            p.push_back(v);
        }
        if (!numeric) {
            if (!seen_content) {
                seen_content = true;
                continue;  // header
            }
            throw ParseError("points line " + std::to_string(lineno) + ": expected comma-separated numbers");
        }
        seen_content = true;
        if (p.size() != dim)
            throw ParseError("points line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " coordinates");
        pts.push_back(std::move(p));
    }
    return pts;
}

std::string plot_svg(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("orbit csv: missing header");
    const auto head = split(trim(line), ',');
    if (head.size() < 2 || head[head.size() - 2] != "word" || head.back() != "len") throw ParseError("orbit csv: header must end with word,len");
    const std::size_t q = head.size() - 2;
    for (std::size_t i = 0; i < q; ++i)
        if (head[i] != "x" + std::to_string(i + 1)) throw ParseError("orbit csv: header column " + std::to_string(i + 1) + " must be x" + std::to_string(i + 1));
    if (q != 2) throw ParseError("plot needs a two-dimensional orbit, got q = " + std::to_string(q));

    std::vector<std::pair<double, double>> pts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto f = split(line, ',');
        double x, y;
        if (f.size() != 4 || !parse_number(f[0], x) || !parse_number(f[1], y))
            throw ParseError("orbit csv line " + std::to_string(lineno) + ": expected x1,x2,word,len");
        pts.emplace_back(x, y);
    }

    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = pts[0].first;
        ymin = ymax = pts[0].second;
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
        // Keep the origin in view so the axes are meaningful.
        xmin = std::min(xmin, 0.0);
        xmax = std::max(xmax, 0.0);
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
        if (xmax - xmin == 0.0) xmin -= 1, xmax += 1;
        if (ymax - ymin == 0.0) ymin -= 1, ymax += 1;
    }
    const double margin = 50.0, span = 900.0;
    auto sx = [&](double x) { return margin + span * (x - xmin) / (xmax - xmin); };
    auto sy = [&](double y) { return margin + span * (ymax - y) / (ymax - ymin); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"black\" stroke-width=\"1\"/>\n", margin, sy(0.0),
                  margin + span, sy(0.0));
    svg += buf;
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"black\" stroke-width=\"1\"/>\n", sx(0.0), margin, sx(0.0),
                  margin + span);
    svg += buf;
    svg += "<g fill=\"steelblue\">\n";
    for (const auto& [x, y] : pts) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\"/>\n", sx(x), sy(y));
        svg += buf;
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

int cmd_orbit(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = scenario_from(o);
        const GeneratorSet gens = working_group(s);
        Point base(s.dim, 0.0);
        if (!o.base.empty()) {
            base.clear();
            for (const auto& f : split(o.base, ',')) {
                double v;
                if (!parse_number(f, v)) throw ParseError("--base: expected comma-separated numbers");
                base.push_back(v);
            }
            if (base.size() != s.dim) throw ParseError("--base: expected " + std::to_string(s.dim) + " coordinates");
        }
        OrbitOptions oo;
        oo.max_len = o.max_len.value_or(s.params.orbit_len);
        oo.dedup_eps = s.params.dedup_eps;
        oo.point_cap = s.params.point_cap;
        oo.threads = std::max(1u, o.threads);
        emit(o, out, orbit_csv(orbit(base, gens, oo), gens));
        return kOk;
    });
}

int cmd_certify(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Scenario s = scenario_from(o);
        const DetectParams p = effective_params(s, o);
        const GeneratorSet gens = working_group(s);
        const std::size_t len = o.max_len.value_or(p.certificate_len);
        const auto cert = contraction_certificate(gens, len, p.tol_cert);
        json j = header("certify", s, p.seed);
        j["max_len"] = static_cast<std::uint64_t>(len);
        j["certificate"] = cert ? to_json(*cert, gens) : json(nullptr);
        if (o.timing) j["timing_ms"] = elapsed_ms(t0);
        emit(o, out, dump_canonical(j));
        return cert ? kOk : kNegative;
    });
}

int cmd_detect(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Scenario s = scenario_from(o);
        DetectParams p = effective_params(s, o);
        if (o.max_len) p.orbit_len = *o.max_len;
        DetectRun run = run_detection(s, p);
        json j = header("detect", s, p.seed);
        j.update(run.body);
        if (o.timing) j["timing_ms"] = elapsed_ms(t0);
        emit(o, out, dump_canonical(j));
        return kOk;
    });
}

int cmd_classify(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const Scenario s = scenario_from(o);
        const DetectParams p = effective_params(s, o);
        if (o.points.empty()) throw ParseError("--points: a points file is required");
        const auto pts = parse_points(read_file(o.points), s.dim);
        const SuspendedFoliation fol = foliation(s);
        const std::size_t budget = o.max_len.value_or(p.orbit_len);
        json leaves = json::array();
        for (const auto& t : pts) {
            json leaf = to_json(classify_leaf(fol, t, budget, p.dedup_eps, p.point_cap));
            leaf["point"] = t;
            leaves.push_back(leaf);
        }
        json j = header("classify", s, p.seed);
        j["foliation"] = fol.label();
        j["budget"] = static_cast<std::uint64_t>(budget);
        j["leaves"] = leaves;
        if (o.timing) j["timing_ms"] = elapsed_ms(t0);
        emit(o, out, dump_canonical(j));
        return kOk;
    });
}

int cmd_example(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const std::string id = "example-" + std::to_string(o.example);
        const auto& builtin = builtin_scenarios();
        const auto it = builtin.find(id);
        if (it == builtin.end()) throw ParseError("example: expected 1, 2, 3 or 4");
        const Scenario s = parse_scenario(it->second);
        DetectParams p = effective_params(s, o);
        if (o.max_len) p.orbit_len = *o.max_len;
        DetectRun run = run_detection(s, p);
        json j = header("example", s, p.seed);
        j.update(run.body);
        const bool ok = s.expected && matches(*s.expected, run.report);
        j["expected"] = s.expected ? json{{"outcome", s.expected->outcome}} : json(nullptr);
        if (s.expected && s.expected->fit_dim) j["expected"]["fit_dim"] = static_cast<std::uint64_t>(*s.expected->fit_dim);
        j["matches"] = ok;
        if (o.timing) j["timing_ms"] = elapsed_ms(t0);
        emit(o, out, dump_canonical(j));
        if (!ok) err << id << ": outcome " << outcome_tag(run.report) << " does not match the expected tag\n";
        return ok ? kOk : kNegative;
    });
}

int cmd_plot(const CommandOptions& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (o.input.empty()) throw ParseError("plot: an orbit CSV input is required");
        emit(o, out, plot_svg(read_file(o.input)));
        return kOk;
    });
}

}  // namespace attractorlab::cli
