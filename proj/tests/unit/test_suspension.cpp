#include <cmath>

#include "attractorlab/error.hpp"
#include "attractorlab/suspension.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attractorlab;

namespace {

Representation example2_rep() {
    const GeneratorSet f = testing::example2();
    std::map<std::string, AffineMap> a;
    for (std::size_t j = 0; j < 3; ++j) {
        a.emplace("a" + std::to_string(j), f.map(j));
        a.emplace("b" + std::to_string(j), AffineMap::identity(2));
    }
    return build_representation(surface_presentation(3, 0), a);
}

}  // namespace

TEST_CASE("presentations") {
    const Presentation s = surface_presentation(2);
    CHECK(s.generators == std::vector<std::string>{"a1", "b1", "a2", "b2"});
    REQUIRE(s.relators.size() == 1);
    CHECK(s.relators[0].length() == 8);
    CHECK(surface_presentation(3, 0).generators.front() == "a0");
    CHECK(surface_presentation(0).rank() == 0);
    CHECK(free_presentation(2).generators == std::vector<std::string>{"g1", "g2"});
    CHECK(free_presentation(2).relators.empty());
    CHECK_THROWS_AS(free_presentation(0), InvalidArgument);
    CHECK(BaseDescriptor::parse("surface 3").to_string() == "surface 3");
    CHECK(BaseDescriptor::parse("free 2").kind == BaseDescriptor::Kind::Free);
    CHECK_THROWS(BaseDescriptor::parse("torus 1"));
}

TEST_CASE("Example 2 relator is the identity with zero residual") {
    const Representation rep = example2_rep();
    CHECK(rep.max_relator_residual == 0.0);
    CHECK(evaluate_word(rep.presentation.relators[0], GeneratorSet(2, [&] {
              std::vector<std::pair<std::string, AffineMap>> g;
              for (std::size_t i = 0; i < rep.images.size(); ++i) g.emplace_back(rep.presentation.generators[i], rep.images[i]);
              return g;
          }()))
              .is_identity());
    const SuspendedFoliation fol = suspend(rep, BaseDescriptor::parse("surface 3"));
    CHECK(fol.holonomy.rank() == 3);
    CHECK(fol.codimension == 2);
    CHECK(fol.label() == "Sus(R^2, surface 3, rho)");
}

TEST_CASE("representation errors") {
    const Presentation s = surface_presentation(1);
    const AffineMap f = testing::diag2(0.5, 0.5), g = testing::diag2(0.5, 0.5, {1.0, 0.0});
    CHECK_THROWS_AS(build_representation(s, {{"a1", f}}), InvalidArgument);
    CHECK_THROWS_AS(build_representation(s, {{"a1", f}, {"b1", f}, {"c1", f}}), InvalidArgument);
    CHECK_THROWS_AS(build_representation(s, {{"a1", f}, {"b1", AffineMap::identity(3)}}), DimensionMismatch);
    try {
        build_representation(s, {{"a1", f}, {"b1", g}});
        FAIL("expected RelatorViolated");
    } catch (const RelatorViolated& e) {
        CHECK(std::string(e.what()).find("a1") != std::string::npos);
    }
    // Commuting images satisfy the relator.
    CHECK(build_representation(s, {{"a1", f}, {"b1", testing::diag2(2.0, 3.0)}}).max_relator_residual < 1e-15);
}

TEST_CASE("leaf classification") {
    const auto free_fol = [](const GeneratorSet& g) {
        std::map<std::string, AffineMap> a;
        for (std::size_t i = 0; i < g.rank(); ++i) a.emplace("g" + std::to_string(i + 1), g.map(i));
        return suspend(build_representation(free_presentation(g.rank()), a), BaseDescriptor{BaseDescriptor::Kind::Free, g.rank()});
    };
    const auto rot = free_fol(GeneratorSet(2, {{"r", AffineMap(Matrix{{0.0, -1.0}, {1.0, 0.0}}, {0.0, 0.0})}}));
    const LeafClass periodic = classify_leaf(rot, Point{1.0, 0.0});
    CHECK(periodic.tag == LeafTag::Periodic);
    CHECK(periodic.orbit_size == 4);

    const auto e1 = free_fol(testing::example1());
    const LeafClass hyperbola = classify_leaf(e1, Point{1.0, 1.0}, 60);
    CHECK(hyperbola.tag == LeafTag::ClosedDiscrete);
    CHECK(hyperbola.witness_count == 0);
    // Points on an axis accumulate at the origin.
    const LeafClass axis = classify_leaf(e1, Point{1.0, 0.0}, 30);
    CHECK(axis.tag == LeafTag::Accumulating);
    CHECK_FALSE(axis.non_proper);

    const auto e2 = free_fol(testing::example2());
    // Orbit spacing at length 8 is 2^-8, so witnesses need the coarser 1e-2 radius.
    const LeafClass dense = classify_leaf(e2, Point{0.3, 0.7}, 8, 1e-3);
    CHECK(dense.tag == LeafTag::Accumulating);
    CHECK(dense.non_proper);
}

TEST_CASE("classification does not depend on using a generator or its inverse") {
    const auto fol_of = [](const AffineMap& m) {
        return suspend(build_representation(free_presentation(1), {{"g1", m}}), BaseDescriptor{BaseDescriptor::Kind::Free, 1});
    };
    const AffineMap f = testing::diag2(0.5, 2.0);
    for (const Point& t : {Point{1.0, 1.0}, Point{1.0, 0.0}, Point{0.0, 0.0}}) {
        const LeafClass a = classify_leaf(fol_of(f), t, 60);
        const LeafClass b = classify_leaf(fol_of(inverse(f)), t, 60);
        CHECK(a.tag == b.tag);
        CHECK(a.orbit_size == b.orbit_size);
        CHECK(a.non_proper == b.non_proper);
    }
}

TEST_CASE("lifting a group attractor") {
    const SuspendedFoliation fol = suspend(example2_rep(), BaseDescriptor::parse("surface 3"));
    DetectParams p;
    p.net_radius = 1.0;
    p.domain = Box{{-5.0, -5.0}, {5.0, 5.0}};
    p.n_samples = 10;
    const auto r = detect_attractor(fol.holonomy, p);
    REQUIRE(r);
    const FoliationAttractor m = lift_attractor(fol, *r);
    CHECK(m.lift.find("M = kappa(r^-1(K))") == 0);
    CHECK(m.minimal == r->minimal);
    CHECK(m.global == r->global);
    CHECK(m.whole_transversal);

    const auto r4 = detect_attractor(testing::example4(), p);
    REQUIRE(r4);
    CHECK_THROWS_AS(lift_attractor(fol, *r4), MismatchedGroup);
}
