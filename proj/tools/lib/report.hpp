#pragma once

#include <optional>
#include <string>

#include "attractorlab/dynamics.hpp"
#include "attractorlab/suspension.hpp"
#include "json.hpp"

namespace attractorlab::cli {

inline constexpr const char* kEngineVersion = "0.1.0";

nlohmann::json to_json(const Certificate& c, const GeneratorSet& gens);
nlohmann::json to_json(const AttractorReport& r, const GeneratorSet& gens);
nlohmann::json to_json(const LeafClass& leaf);
nlohmann::json to_json(const FoliationAttractor& fa);
nlohmann::json to_json(const Box& b);

/// "0x" followed by 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace attractorlab::cli
