#include <cmath>

#include "attractorlab/error.hpp"
#include "attractorlab/orbit.hpp"
#include "attractorlab/spatial_hash.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attractorlab;

namespace {

bool contains_point(const OrbitSample& s, const Point& p, double tol) {
    for (const auto& e : s.entries)
        if (distance(e.point, p) < tol) return true;
    return false;
}

}  // namespace

TEST_CASE("orbit of 1 under x -> x/2 on the line") {
    const GeneratorSet g(1, {{"h", AffineMap(Matrix{{0.5}}, {0.0})}});
    OrbitOptions o;
    o.max_len = 3;
    const OrbitSample s = orbit(Point{1.0}, g, o);
    CHECK(s.entries.size() == 7);
    CHECK(contains_point(s, {0.125}, 1e-15));
    CHECK(contains_point(s, {8.0}, 1e-15));
    CHECK_FALSE(s.closed);
    for (const auto& e : s.entries) {
        const Point y = evaluate_word(e.word, g)(s.base);
        CHECK(distance(y, e.point) < 1e-12);
    }
}

TEST_CASE("identity generator gives a closed single-point orbit") {
    const GeneratorSet g(2, {{"id", AffineMap::identity(2)}});
    const OrbitSample s = orbit(Point{0.3, 0.4}, g);
    CHECK(s.entries.size() == 1);
    CHECK(s.closed);
    CHECK(is_generator_invariant(s, g));
}

TEST_CASE("Example 1 orbit of (1,1) at word length 3") {
    OrbitOptions o;
    o.max_len = 3;
    const OrbitSample s = orbit(Point{1.0, 1.0}, testing::example1(), o);
    CHECK(s.entries.size() == 7);
    for (const auto& e : s.entries) CHECK(std::abs(e.point[0] * e.point[1] - 1.0) < 1e-12);
    CHECK(contains_point(s, {0.125, 8.0}, 1e-15));
    CHECK(contains_point(s, {8.0, 0.125}, 1e-15));
}

TEST_CASE("closed orbits are generator invariant") {
    // Rotation by a quarter turn: orbit of a point has four elements.
    const GeneratorSet g(2, {{"r", AffineMap(Matrix{{0.0, -1.0}, {1.0, 0.0}}, {0.0, 0.0})}});
    const OrbitSample s = orbit(Point{1.0, 0.0}, g);
    CHECK(s.closed);
    CHECK(s.entries.size() == 4);
    CHECK(is_generator_invariant(s, g));
    CHECK(s.near_merges.empty());
}

TEST_CASE("orbit output is independent of the thread count") {
    OrbitOptions o;
    o.max_len = 7;
    o.threads = 1;
    const OrbitSample a = orbit(Point{0.3, 0.7}, testing::example2(), o);
    o.threads = 8;
    const OrbitSample b = orbit(Point{0.3, 0.7}, testing::example2(), o);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].point == b.entries[i].point);
        CHECK(a.entries[i].word == b.entries[i].word);
    }
}

TEST_CASE("point cap throws or truncates") {
    OrbitOptions o;
    o.max_len = 10;
    o.point_cap = 50;
    CHECK_THROWS_AS(orbit(Point{0.3, 0.7}, testing::example2(), o), BudgetExceeded);
    o.throw_on_cap = false;
    const OrbitSample s = orbit(Point{0.3, 0.7}, testing::example2(), o);
    CHECK(s.truncated);
    CHECK(s.entries.size() <= 50);
}

TEST_CASE("escapes are counted and not expanded") {
    const GeneratorSet g(1, {{"t", AffineMap(Matrix{{1e5}}, {0.0})}});
    OrbitOptions o;
    o.max_len = 4;
    const OrbitSample s = orbit(Point{1.0}, g, o);
    CHECK(s.escapes > 0);
    for (const auto& e : s.entries) CHECK(std::abs(e.point[0]) <= 1e9);
}

TEST_CASE("search_orbit reaches targets and proves misses when exhausted") {
    const GeneratorSet g(1, {{"h", AffineMap(Matrix{{2.0}}, {0.0})}});
    auto near_zero = [](std::span<const double> p) { return std::abs(p[0]); };
    SearchOptions o;
    o.max_len = 40;
    const SearchResult hit = search_orbit(Point{3.0}, g, near_zero, 1e-6, o);
    CHECK(hit.reached);
    CHECK(evaluate_word(hit.word, g)(Point{3.0})[0] == doctest::Approx(hit.point[0]));

    const GeneratorSet e1 = testing::example1();
    auto near_origin = [](std::span<const double> p) { return norm2(p); };
    o.max_len = 12;
    const SearchResult miss = search_orbit(Point{1.0, 1.0}, e1, near_origin, 0.01, o);
    CHECK_FALSE(miss.reached);
    CHECK(miss.exhausted);
    CHECK(miss.distance >= std::sqrt(2.0) - 1e-12);
}

TEST_CASE("point index queries") {
    PointIndex idx(2, 0.1);
    idx.insert(Point{0.0, 0.0});
    idx.insert(Point{0.25, 0.0});
    idx.insert(Point{1.0, 1.0});
    CHECK(idx.size() == 3);
    CHECK(idx.any_within(Point{0.05, 0.0}, 0.06));
    CHECK_FALSE(idx.any_within(Point{0.5, 0.5}, 0.2));
    CHECK_FALSE(idx.any_within(Point{0.1, 0.0}, 0.1));  // strict
    const auto n = idx.nearest(Point{0.2, 0.0}, 0.5);
    REQUIRE(n);
    CHECK(n->first == 1);
    std::size_t count = 0;
    idx.for_each_within(Point{0.0, 0.0}, 0.3, [&](std::size_t, double) { ++count; });
    CHECK(count == 2);
}
