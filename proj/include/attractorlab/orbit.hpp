#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "attractorlab/affine.hpp"
#include "attractorlab/linalg.hpp"
#include "attractorlab/word.hpp"

namespace attractorlab {

struct OrbitOptions {
    std::size_t max_len = 60;
    double dedup_eps = 1e-4;
    std::size_t point_cap = 1'000'000;
    /// Points with Euclidean norm above this are counted as escapes and not expanded.
    double escape_norm = 1e9;
    unsigned threads = 1;
    /// Keep a record of distinct points that dedup merged into a neighbour.
    bool record_near_merges = false;
    /// When false, hitting point_cap stops expansion and marks the sample
    /// truncated instead of throwing.
    bool throw_on_cap = true;
};

struct OrbitEntry {
    Point point;
    Word word;  // point == apply(evaluate_word(word), base)
};

/// A candidate dropped by dedup that was not a numerical coincidence with the
/// kept neighbour (distance above 1e-9 * (1 + |p|)).
struct NearMerge {
    Point point;
    std::size_t kept_index;
    double gap;
};

struct OrbitSample {
    Point base;
    std::vector<OrbitEntry> entries;
    double dedup_eps = 0.0;
    std::size_t budget = 0;
    std::size_t escapes = 0;
    /// Expansion ran out of new points before reaching the word budget.
    bool closed = false;
    bool truncated = false;
    std::vector<NearMerge> near_merges;

    std::vector<Point> points() const;
};

/// Breadth-first closure of {base} under the generators and their inverses up
/// to word length max_len. Candidates of each level are generated in shortlex
/// order of their words and merged sequentially, so the first (shortest, then
/// lexicographically least) word claims a point regardless of thread count.
/// Throws BudgetExceeded past opts.point_cap points.
OrbitSample orbit(std::span<const double> base, const GeneratorSet& gens, const OrbitOptions& opts = {});

/// True when every entry whose word is shorter than the budget maps, under
/// every generator and inverse, to within dedup_eps of some entry (or escapes).
bool is_generator_invariant(const OrbitSample& sample, const GeneratorSet& gens);

struct SearchOptions {
    std::size_t max_len = 60;
    double dedup_eps = 1e-4;
    std::size_t node_cap = 20'000;
    double escape_norm = 1e9;
};

struct SearchResult {
    Point point;      // closest orbit point found
    Word word;        // its provenance
    double distance;  // objective at `point`
    bool reached;     // distance < target
    /// Search space (words up to max_len, modulo dedup and escapes) fully
    /// explored without reaching the target.
    bool exhausted;
    std::size_t expanded;
};

/// Best-first search over the orbit of `start`, ordered by `objective`, that
/// stops once objective < target. Every returned point is a genuine orbit
/// point with its word; a miss is a proof only when `exhausted` is set.
/// Candidates merge within min(dedup_eps, target / 2) so that dedup never
/// hides an approach finer than the target.
SearchResult search_orbit(std::span<const double> start, const GeneratorSet& gens,
                          const std::function<double(std::span<const double>)>& objective, double target,
                          const SearchOptions& opts = {});

}  // namespace attractorlab
