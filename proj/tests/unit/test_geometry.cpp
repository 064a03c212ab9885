#include <cmath>

#include "attractorlab/error.hpp"
#include "attractorlab/geometry.hpp"
#include "doctest.h"

using namespace attractorlab;

TEST_CASE("subspace fit finds the x-axis") {
    std::vector<Point> pts;
    for (int i = -5; i <= 5; ++i) pts.push_back({0.3 * i, 0.0});
    const AffineSubspace s = fit_affine_subspace(pts, 1e-6);
    CHECK(s.dim == 1);
    CHECK(s.residual < 1e-12);
    REQUIRE(s.basis.size() == 1);
    CHECK(std::abs(s.basis[0][0] - 1.0) < 1e-12);
    CHECK(std::abs(s.base[1]) < 1e-15);
    CHECK(s.distance_to(Point{7.0, -2.0}) == doctest::Approx(2.0));
}

TEST_CASE("subspace fit dimensions") {
    CHECK(fit_affine_subspace({{1.0, 2.0}, {1.0, 2.0 + 1e-9}}, 1e-6).dim == 0);
    CHECK(fit_affine_subspace({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, 1e-6).dim == 2);
    CHECK(fit_affine_subspace({{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}}, 1e-6).dim == 1);
    CHECK_THROWS_AS(fit_affine_subspace({{1.0, 1.0}}, 1e-6), Degenerate);
    CHECK_THROWS_AS(fit_affine_subspace({{1.0, 1.0}, {1.0, 1.0}}, 1e-6), Degenerate);
}

TEST_CASE("hausdorff distance") {
    const std::vector<Point> a{{0.0, 0.0}}, b{{1.0, 1.0}}, c{{0.0, 0.0}, {3.0, 0.0}};
    CHECK(hausdorff_distance(a, b) == doctest::Approx(std::sqrt(2.0)));
    CHECK(hausdorff_distance(a, a) == 0.0);
    CHECK(hausdorff_distance(a, c) == doctest::Approx(3.0));
    CHECK(hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c) + 1e-12);
    CHECK_THROWS_AS(hausdorff_distance({}, a), EmptySet);
}

TEST_CASE("epsilon grid and coverage") {
    const Box box{{0.0, 0.0}, {1.0, 0.0}};
    const auto grid = epsilon_grid(box, 0.3);
    CHECK(grid.size() == 5);  // 0, 0.3, 0.6, 0.9, 1.0
    CHECK(grid.back()[0] == 1.0);
    CHECK(epsilon_grid(Box{{0.0}, {1.0}}, 0.25).size() == 5);

    std::vector<Point> pts;
    for (int i = 0; i <= 10; ++i) pts.push_back({0.09 * i, 0.0});
    pts.push_back({1.0, 0.0});
    CHECK(is_epsilon_dense(pts, box, 0.05));
    pts.erase(pts.begin() + 5);  // 0.45 gone: grid point 0.45 is 0.09 from both neighbours
    CHECK_FALSE(is_epsilon_dense(pts, box, 0.05));
    CHECK(coverage_gap(pts, box, 0.05) == doctest::Approx(0.09));
    CHECK(std::isinf(coverage_gap({}, box, 0.05)));
}

TEST_CASE("box validation and containment") {
    CHECK_THROWS(Box{{1.0}, {0.0}}.validate());
    CHECK_THROWS(Box{{0.0, 0.0}, {1.0}}.validate());
    const Box b{{-1.0, -1.0}, {1.0, 1.0}};
    CHECK(b.contains(Point{1.0, -1.0}));
    CHECK_FALSE(b.contains(Point{1.0001, 0.0}));
}

TEST_CASE("greedy net keeps separated points in input order") {
    const std::vector<Point> pts{{0.0}, {0.01}, {0.2}, {0.21}, {0.5}};
    CHECK(greedy_net(pts, 0.05) == std::vector<std::size_t>{0, 2, 4});
}
