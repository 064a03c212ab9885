#include "attractorlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "attractorlab/error.hpp"
#include "attractorlab/parallel.hpp"
#include "attractorlab/spatial_hash.hpp"

namespace attractorlab {

namespace {

constexpr std::size_t kNearMergeRecordCap = 100'000;

double coincidence_tol(std::span<const double> p) { return 1e-9 * (1.0 + norm2(p)); }

}  // namespace

std::vector<Point> OrbitSample::points() const {
    std::vector<Point> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.point);
    return out;
}

OrbitSample orbit(std::span<const double> base, const GeneratorSet& gens, const OrbitOptions& opts) {
    if (base.size() != gens.dim()) throw DimensionMismatch("orbit: base point dimension differs from generator dimension");
    if (!(opts.dedup_eps > 0.0)) throw InvalidArgument("orbit: dedup_eps must be positive");

    OrbitSample sample;
    sample.base.assign(base.begin(), base.end());
    sample.dedup_eps = opts.dedup_eps;
    sample.budget = opts.max_len;

    PointIndex index(gens.dim(), opts.dedup_eps);
    index.insert(base);
    sample.entries.push_back({sample.base, Word{}});

    const auto alphabet = static_cast<std::uint32_t>(2 * gens.rank());
    std::vector<std::size_t> frontier{0};
    std::size_t level = 0;
    for (; level < opts.max_len && !frontier.empty(); ++level) {
        struct Candidate {
            std::size_t parent;
            Letter letter;
        };
        std::vector<Candidate> candidates;
        candidates.reserve(frontier.size() * alphabet);
        // Letter-major order over a shortlex-sorted frontier yields shortlex order
        // of the prepended words.
        for (std::uint32_t c = 0; c < alphabet; ++c) {
            const Letter l = Letter::from_code(c);
            for (std::size_t parent : frontier) {
                const auto& w = sample.entries[parent].word;
                if (!w.empty() && w.letters().front().cancels(l)) continue;
                candidates.push_back({parent, l});
            }
        }
        std::vector<Point> images(candidates.size());
        parallel_for(candidates.size(), opts.threads, [&](std::size_t i) {
            images[i] = gens.letter_map(candidates[i].letter)(sample.entries[candidates[i].parent].point);
        });

        std::vector<std::size_t> next;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Point& p = images[i];
            if (!(norm2(p) <= opts.escape_norm)) {
                ++sample.escapes;
                continue;
            }
            if (auto hit = index.nearest(p, opts.dedup_eps); hit && hit->second < opts.dedup_eps) {
                if (opts.record_near_merges && hit->second > coincidence_tol(p) && sample.near_merges.size() < kNearMergeRecordCap)
                    sample.near_merges.push_back({p, hit->first, hit->second});
                continue;
            }
            index.insert(p);
            sample.entries.push_back({p, sample.entries[candidates[i].parent].word.prepended(candidates[i].letter)});
            next.push_back(sample.entries.size() - 1);
            if (sample.entries.size() > opts.point_cap) {
                if (opts.throw_on_cap)
                    throw BudgetExceeded("orbit: point cap " + std::to_string(opts.point_cap) + " exceeded at word length " + std::to_string(level + 1));
                sample.entries.pop_back();
                sample.truncated = true;
                return sample;
            }
        }
        frontier = std::move(next);
    }
    sample.closed = frontier.empty();
    return sample;
}

bool is_generator_invariant(const OrbitSample& sample, const GeneratorSet& gens) {
    PointIndex index(gens.dim(), sample.dedup_eps);
    for (const auto& e : sample.entries) index.insert(e.point);
    const double slack = sample.dedup_eps * (1.0 + 1e-9);
    for (const auto& e : sample.entries) {
        if (e.word.length() >= sample.budget) continue;
        for (std::uint32_t c = 0; c < 2 * gens.rank(); ++c) {
            const Point img = gens.letter_map(Letter::from_code(c))(e.point);
            if (!(norm2(img) <= 1e9)) continue;
            if (!index.any_within(img, slack)) return false;
        }
    }
    return true;
}

SearchResult search_orbit(std::span<const double> start, const GeneratorSet& gens,
                          const std::function<double(std::span<const double>)>& objective, double target,
                          const SearchOptions& opts) {
    if (start.size() != gens.dim()) throw DimensionMismatch("search_orbit: start dimension differs from generator dimension");

    struct Node {
        Point point;
        Word word;
    };
    std::vector<Node> nodes;
    using Key = std::tuple<double, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> open;
    // Merging at a radius coarser than the target would stall the approach.
    const double merge = target > 0.0 ? std::min(opts.dedup_eps, 0.5 * target) : opts.dedup_eps;
    PointIndex index(gens.dim(), merge);

    nodes.push_back({Point(start.begin(), start.end()), Word{}});
    index.insert(start);
    const double d0 = objective(start);
    SearchResult best{nodes[0].point, Word{}, d0, d0 < target, false, 0};
    if (best.reached) return best;
    open.emplace(d0, 0);

    const auto alphabet = static_cast<std::uint32_t>(2 * gens.rank());
    while (!open.empty()) {
        if (best.expanded >= opts.node_cap) return best;
        const auto [d, id] = open.top();
        open.pop();
        ++best.expanded;
        const Node node = nodes[id];
        if (node.word.length() >= opts.max_len) continue;
        for (std::uint32_t c = 0; c < alphabet; ++c) {
            const Letter l = Letter::from_code(c);
            if (!node.word.empty() && node.word.letters().front().cancels(l)) continue;
            Point p = gens.letter_map(l)(node.point);
            if (!(norm2(p) <= opts.escape_norm)) continue;
            if (index.any_within(p, merge)) continue;
            index.insert(p);
            const double dp = objective(p);
            nodes.push_back({std::move(p), node.word.prepended(l)});
            if (dp < best.distance) {
                best.point = nodes.back().point;
                best.word = nodes.back().word;
                best.distance = dp;
            }
            if (dp < target) {
                best.reached = true;
                return best;
            }
            open.emplace(dp, nodes.size() - 1);
        }
    }
    best.exhausted = true;
    return best;
}

}  // namespace attractorlab
