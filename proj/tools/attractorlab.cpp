#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace attractorlab::cli;

int main(int argc, char** argv) {
    CLI::App app{"attractorlab: orbits, contraction certificates and attractors of affine group actions"};
    app.require_subcommand(1);

    CommandOptions o;
    std::uint64_t seed = 0;
    std::size_t max_len = 0;

    auto scenario_opt = [&](CLI::App* c) { c->add_option("--scenario", o.scenario, "Scenario JSON file")->required(); };
    auto common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "Output path (stdout when omitted)");
        c->add_option("--seed", seed, "Sampling seed (overrides the scenario)");
        c->add_option("--max-len", max_len, "Word budget");
        c->add_option("--threads", o.threads, "Worker threads; never changes the output")->check(CLI::Range(1u, 1024u));
        c->add_flag("--timing", o.timing, "Include wall-clock timing in the report");
    };

    auto* orbit = app.add_subcommand("orbit", "Write the orbit of a point as CSV");
    scenario_opt(orbit);
    common(orbit);
    orbit->add_option("--base", o.base, "Base point, comma-separated (default: origin)");

    auto* certify = app.add_subcommand("certify", "Search for a contracting word");
    scenario_opt(certify);
    common(certify);

    auto* detect = app.add_subcommand("detect", "Run the attractor detection pipeline");
    scenario_opt(detect);
    common(detect);

    auto* classify = app.add_subcommand("classify", "Classify leaves through the given transversal points");
    scenario_opt(classify);
    common(classify);
    classify->add_option("--points", o.points, "Points file, one comma-separated point per line")->required();

    auto* example = app.add_subcommand("example", "Run a shipped example and check its expected outcome");
    common(example);
    example->add_option("n", o.example, "Example number")->required()->check(CLI::Range(1, 4));

    auto* plot = app.add_subcommand("plot", "Render a two-dimensional orbit CSV as SVG");
    plot->add_option("csv", o.input, "Orbit CSV from the orbit command")->required();
    plot->add_option("--out", o.out, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kBadInput;
    }

    for (auto* c : app.get_subcommands()) {
        if (c->count("--seed")) o.seed = seed;
        if (c->count("--max-len")) o.max_len = max_len;
    }

    if (*orbit) return cmd_orbit(o, std::cout, std::cerr);
    if (*certify) return cmd_certify(o, std::cout, std::cerr);
    if (*detect) return cmd_detect(o, std::cout, std::cerr);
    if (*classify) return cmd_classify(o, std::cout, std::cerr);
    if (*example) return cmd_example(o, std::cout, std::cerr);
    return cmd_plot(o, std::cout, std::cerr);
}
