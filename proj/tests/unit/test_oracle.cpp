#include <cmath>

#include "attractorlab/affine.hpp"
#include "attractorlab/geometry.hpp"
#include "attractorlab/orbit.hpp"
#include "attractorlab/oracle/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attractorlab;
namespace orc = attractorlab::oracle;

namespace {

double diff(const orc::PlainAffine& p, const AffineMap& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        d = std::max(d, std::abs(p.t[i] - m.translation()[i]));
        for (std::size_t j = 0; j < p.t.size(); ++j) d = std::max(d, std::abs(p.m[i][j] - m.linear()(i, j)));
    }
    return d;
}

}  // namespace

TEST_CASE("pointwise composition oracle agrees with compose") {
    SplitMix64 rng(99);
    const std::vector<orc::Vec> pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    for (int k = 0; k < 100; ++k) {
        const AffineMap f = testing::random_map(rng, 2), g = testing::random_map(rng, 2);
        const auto o = orc::pointwise_compose_oracle(testing::plain(f), testing::plain(g), pts);
        CHECK(diff(o, compose(f, g)) < 1e-9);
    }
}

TEST_CASE("oracle rejects degenerate test sets") {
    const auto f = testing::plain(testing::diag2(0.5, 2.0));
    CHECK_THROWS_AS(orc::pointwise_compose_oracle(f, f, {{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}}), orc::DegenerateTestSet);
    CHECK_THROWS_AS(orc::pointwise_compose_oracle(f, f, {{0.0, 0.0}, {1.0, 1.0}}), orc::DegenerateTestSet);
    CHECK_THROWS_AS(orc::reconstruct({}, {}), orc::DegenerateTestSet);
}

TEST_CASE("random words evaluate identically in engine and oracle") {
    SplitMix64 rng(1234);
    const GeneratorSet g = testing::example4();
    const auto gens = testing::plain(g);
    for (int k = 0; k < 200; ++k) {
        const std::size_t len = rng.next() % 11;
        std::vector<Letter> ls;
        for (std::size_t i = 0; i < len; ++i)
            ls.push_back({static_cast<std::uint32_t>(rng.next() % 2), static_cast<std::int8_t>(rng.next() % 2 ? 1 : -1)});
        const Word w(ls);
        std::vector<orc::PlainLetter> pw;
        for (const auto& l : w.letters()) pw.push_back({l.generator, l.sign});
        const AffineMap m = evaluate_word(w, g);
        CHECK(diff(orc::word_map(gens, pw), m) < 1e-9 * (1.0 + max_abs_entry(m.linear()) + max_abs(m.translation())));
    }
}

TEST_CASE("grid closure is monotone in the budget") {
    const auto f = testing::plain(testing::example2());
    std::size_t prev = 0;
    for (std::size_t budget : {10u, 100u, 1000u, 10000u}) {
        const auto g = orc::grid_orbit_closure(f, {0.3, 0.7}, {0.0, 0.0}, {1.0, 1.0}, 0.05, budget, 1.0);
        CHECK(g.occupied_in_box() >= prev);
        CHECK(g.budget_exhausted);
        prev = g.occupied_in_box();
    }
    const auto full = orc::grid_orbit_closure(f, {0.3, 0.7}, {0.0, 0.0}, {1.0, 1.0}, 0.05, 100'000'000, 1.0);
    CHECK_FALSE(full.budget_exhausted);
    CHECK(full.occupied_in_box() >= prev);
    CHECK(full.total_cells() == 400);
}

TEST_CASE("naive orbit matches the engine orbit before dedup") {
    const GeneratorSet g = testing::example1();
    const auto naive = orc::naive_orbit(testing::plain(g), {1.0, 1.0}, 3);
    OrbitOptions o;
    o.max_len = 3;
    const OrbitSample s = orbit(Point{1.0, 1.0}, g, o);
    CHECK(naive.size() == s.entries.size());
    CHECK(hausdorff_distance(naive, s.points()) < 1e-12);
    CHECK(orc::density_check(s.points(), {0.0, 0.0}, {0.0, 0.0}, 0.1) == false);
    CHECK_FALSE(orc::density_check({}, {0.0}, {1.0}, 0.1));
}

TEST_CASE("power iteration norm") {
    CHECK(orc::power_iteration_norm({{0.5, 0.0}, {0.0, 2.0}}, 200) == doctest::Approx(2.0));
    CHECK(orc::power_iteration_norm({{0.0, 0.0}, {0.0, 0.0}}, 10) == 0.0);
}
