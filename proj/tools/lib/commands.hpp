#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace attractorlab::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kNegative = 1,     // certify found nothing, or an example missed its expectation
    kBadInput = 2,     // parse errors, invalid arguments, plot of q != 2
    kBudget = 3,       // a word or point budget was exceeded
    kInternal = 4,
};

struct CommandOptions {
    std::string scenario;
    std::string out;  // stdout when empty
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_len;
    unsigned threads = 1;
    std::string base;    // orbit: comma-separated coordinates
    std::string points;  // classify: points file
    std::string input;   // plot: orbit CSV
    int example = 0;
    bool timing = false;
};

int cmd_orbit(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_certify(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_detect(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_classify(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_example(const CommandOptions& o, std::ostream& out, std::ostream& err);
int cmd_plot(const CommandOptions& o, std::ostream& out, std::ostream& err);

/// Outcome tag of a detection run, comparable to Expectation::outcome.
std::string outcome_tag(const std::optional<AttractorReport>& r);

/// True when the run matches the expectation (outcome tag and fitted dimension).
bool matches(const Expectation& e, const std::optional<AttractorReport>& r);

/// Orbit CSV text: header x1..xq,word,len and one row per entry.
std::string orbit_csv(const OrbitSample& sample, const GeneratorSet& gens);

/// Static SVG scatter plot of a two-dimensional orbit CSV. Throws ParseError on
/// malformed input or when q != 2.
std::string plot_svg(const std::string& csv);

/// One point per line, comma-separated; blank lines, '#' comments and a
/// leading non-numeric header line are skipped.
std::vector<Point> parse_points(const std::string& text, std::size_t dim);

}  // namespace attractorlab::cli
