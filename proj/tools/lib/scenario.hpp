#pragma once

// Scenario files: a generator set (or a suspension over one), run parameters
// and, for the shipped corpus, the expected outcome.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/affine.hpp"
#include "attractorlab/dynamics.hpp"
#include "attractorlab/suspension.hpp"

namespace attractorlab::cli {

/// Malformed scenario input. The message starts with the offending key path.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
    std::string name;
    std::vector<std::vector<double>> linear;
    std::vector<double> translation;
};

struct SuspensionSpec {
    std::string base;  // "surface m" or "free r"
    std::size_t first_index = 1;
    /// Presentation generator -> generator name, or "identity".
    std::map<std::string, std::string> assignment;
};

struct Expectation {
    std::string outcome;  // no-attractor | attractor | global-attractor | minimal-global-attractor
    std::optional<std::size_t> fit_dim;
};

struct Scenario {
    int schema_version = 1;
    std::string id;
    std::size_t dim = 0;
    std::vector<GeneratorSpec> generators;
    std::optional<SuspensionSpec> suspension;
    DetectParams params;
    std::optional<Expectation> expected;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
/// Canonical form: sorted keys, every parameter written, floats as %.17g.
std::string serialize_scenario(const Scenario& s);

/// The scenario's group: generators in file order.
GeneratorSet generator_set(const Scenario& s);

/// The suspension when the scenario declares one, otherwise the free
/// suspension over the generators.
SuspendedFoliation foliation(const Scenario& s);

/// The group whose dynamics the commands analyse: the holonomy group of the
/// suspension when present, else the generator set.
GeneratorSet working_group(const Scenario& s);

/// Shipped scenarios, keyed by id.
const std::map<std::string, std::string>& builtin_scenarios();

}  // namespace attractorlab::cli
