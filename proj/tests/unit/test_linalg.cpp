#include <cmath>
#include <numbers>

#include "attractorlab/error.hpp"
#include "attractorlab/linalg.hpp"
#include "attractorlab/random.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attractorlab;

TEST_CASE("operator norm and spectral radius of a diagonal matrix") {
    const Matrix a{{0.5, 0.0}, {0.0, 2.0}};
    CHECK(operator_norm(a) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(spectral_radius(a) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("rotation times a scalar contraction has norm 0.5 for any angle") {
    for (double theta : {0.0, 0.3, 1.0, std::numbers::pi / 2, 2.5, 4.0}) {
        const double c = std::cos(theta), s = std::sin(theta);
        const Matrix a{{0.5 * c, -0.5 * s}, {0.5 * s, 0.5 * c}};
        CHECK(std::abs(operator_norm(a) - 0.5) < 1e-14);
        CHECK(std::abs(spectral_radius(a) - 0.5) < 1e-14);
    }
}

TEST_CASE("operator norm agrees with a power-iteration oracle on random 2x2 matrices") {
    SplitMix64 rng(7);
    for (int k = 0; k < 200; ++k) {
        Matrix a(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
        const double oracle = attractorlab::oracle::power_iteration_norm(a.to_rows(), 100000);
        CHECK(std::abs(operator_norm(a) - oracle) < 1e-8);
        CHECK(operator_norm(a) >= spectral_radius(a) - 1e-12);
    }
}

TEST_CASE("3x3 and 4x4 paths") {
    const Matrix d = Matrix::diagonal(std::vector<double>{0.25, -3.0, 1.5});
    CHECK(operator_norm(d) == doctest::Approx(3.0));
    CHECK(spectral_radius(d) == doctest::Approx(3.0));

    // Rotation by 90 degrees in the first plane, scaled: eigenvalues +-0.8i, 0.3, -0.1.
    const Matrix r{{0.0, -0.8, 0.0, 0.0}, {0.8, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.3, 0.0}, {0.0, 0.0, 0.0, -0.1}};
    CHECK(spectral_radius(r) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(operator_norm(r) == doctest::Approx(0.8).epsilon(1e-12));

    // Non-normal: spectral radius 0.5, norm larger.
    const Matrix j{{0.5, 10.0, 0.0}, {0.0, 0.5, 0.0}, {0.0, 0.0, 0.1}};
    CHECK(spectral_radius(j) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(operator_norm(j) > 10.0);

    SplitMix64 rng(3);
    for (int k = 0; k < 50; ++k) {
        Matrix a(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 3; ++c) a(i, c) = rng.uniform(-2.0, 2.0);
        const double oracle = attractorlab::oracle::power_iteration_norm(a.to_rows(), 100000);
        CHECK(std::abs(operator_norm(a) - oracle) < 1e-8);
        CHECK(operator_norm(a) >= spectral_radius(a) - 1e-12);
    }
}

TEST_CASE("symmetric eigen decomposition is sorted and orthonormal") {
    const Matrix s{{4.0, 1.0, 0.0}, {1.0, 3.0, 0.5}, {0.0, 0.5, 1.0}};
    const SymmetricEigen e = symmetric_eigen(s);
    REQUIRE(e.values.size() == 3);
    CHECK(e.values[0] >= e.values[1]);
    CHECK(e.values[1] >= e.values[2]);
    for (std::size_t j = 0; j < 3; ++j) {
        Point v{e.vectors(0, j), e.vectors(1, j), e.vectors(2, j)};
        const Point sv = s * v;
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(sv[i] - e.values[j] * v[i]) < 1e-12);
        CHECK(std::abs(norm2(v) - 1.0) < 1e-12);
    }
}

TEST_CASE("solve_with_rank classifies square systems") {
    const Matrix a{{2.0, 1.0}, {1.0, 3.0}};
    auto r = solve_with_rank(a, std::vector<double>{3.0, 5.0});
    REQUIRE(r.status == SolveResult::Status::Unique);
    CHECK(r.x[0] == doctest::Approx(0.8));
    CHECK(r.x[1] == doctest::Approx(1.4));

    const Matrix z(2, 2, 0.0);
    CHECK(solve_with_rank(z, std::vector<double>{0.0, 0.0}).status == SolveResult::Status::Underdetermined);
    CHECK(solve_with_rank(z, std::vector<double>{1.0, 0.0}).status == SolveResult::Status::Inconsistent);

    const Matrix rank1{{1.0, 2.0}, {2.0, 4.0}};
    CHECK(solve_with_rank(rank1, std::vector<double>{1.0, 2.0}).status == SolveResult::Status::Underdetermined);
    CHECK(solve_with_rank(rank1, std::vector<double>{1.0, 3.0}).status == SolveResult::Status::Inconsistent);
}

TEST_CASE("determinant and shape errors") {
    CHECK(determinant(Matrix{{1.0, 2.0}, {3.0, 4.0}}) == doctest::Approx(-2.0));
    CHECK(determinant(Matrix::identity(4)) == 1.0);
    const Matrix row{{1.0, 2.0}};
    CHECK_THROWS_AS(row * row, DimensionMismatch);
    CHECK_THROWS_AS(add(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), DimensionMismatch);
}
