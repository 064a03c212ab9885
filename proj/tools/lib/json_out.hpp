#pragma once

#include <string>

#include "json.hpp"

namespace attractorlab::cli {

/// Deterministic JSON text: two-space indentation, object keys in sorted
/// order, floating-point numbers as %.17g (with ".0" when the result reads as
/// an integer), non-finite floats as null. Ends with a newline.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace attractorlab::cli
