#include <cmath>

#include "attractorlab/affine.hpp"
#include "attractorlab/error.hpp"
#include "attractorlab/random.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace attractorlab;
using testing::diag2;

namespace {

Word random_word(SplitMix64& rng, std::size_t rank, std::size_t max_len) {
    const std::size_t len = static_cast<std::size_t>(rng.next() % (max_len + 1));
    std::vector<Letter> ls;
    for (std::size_t i = 0; i < len; ++i)
        ls.push_back({static_cast<std::uint32_t>(rng.next() % rank), static_cast<std::int8_t>(rng.next() % 2 ? 1 : -1)});
    return Word(ls);
}

}  // namespace

TEST_CASE("composition follows <A,a> o <B,b> = <AB, Ab + a>") {
    const AffineMap f(Matrix{{1.0, 2.0}, {0.0, 1.0}}, {1.0, -1.0});
    const AffineMap g(Matrix{{0.0, -1.0}, {1.0, 0.0}}, {3.0, 0.5});
    const AffineMap fg = compose(f, g);
    CHECK(fg.linear() == Matrix{{2.0, -1.0}, {1.0, 0.0}});
    CHECK(fg.translation() == Point{1.0 + 3.0 + 1.0, -1.0 + 0.5});
    const Point x{0.25, -4.0};
    const Point lhs = fg(x), rhs = f(g(x));
    CHECK(std::abs(lhs[0] - rhs[0]) < 1e-15);
    CHECK(std::abs(lhs[1] - rhs[1]) < 1e-15);
}

TEST_CASE("construction and fixed point errors") {
    CHECK_THROWS_AS(AffineMap(Matrix{{1.0, 2.0}, {2.0, 4.0}}, {0.0, 0.0}), NearSingular);
    CHECK_THROWS_AS(AffineMap(Matrix{{1.0, 0.0}, {0.0, 1.0}}, {0.0}), DimensionMismatch);
    CHECK_THROWS_AS(compose(diag2(1.0, 1.0), AffineMap::identity(3)), DimensionMismatch);
    CHECK_THROWS_AS(fixed_point(AffineMap::identity(2)), NonUnique);
    CHECK_THROWS_AS(fixed_point(AffineMap::translation_by({1.0, 0.0})), NoFixedPoint);
    const Point v = fixed_point(diag2(0.5, 0.5, {1.0, 0.0}));
    CHECK(v[0] == doctest::Approx(2.0));
    CHECK(v[1] == doctest::Approx(0.0));
    const GeneratorSet g = testing::example1();
    CHECK_THROWS_AS(evaluate_word(Word::letter(3), g), BadIndex);
    CHECK_THROWS_AS(commutator_h_n(diag2(0.5, 0.5), diag2(0.5, 0.5), 0), InvalidArgument);
}

TEST_CASE("powers, identity and generator set bookkeeping") {
    const AffineMap f = diag2(0.5, 2.0, {1.0, 1.0});
    CHECK(power(f, 0).is_identity());
    CHECK(compose(power(f, 5), power(f, -5)).is_identity(1e-12));
    CHECK(power(f, 3).max_abs_diff(compose(f, compose(f, f))) < 1e-15);
    CHECK_THROWS_AS(GeneratorSet(2, {{"a", f}, {"a", f}}), InvalidArgument);
    const GeneratorSet a(2, {{"a", f}}), b(2, {{"renamed", f}});
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != testing::example1().fingerprint());
    CHECK(a.letter_map(Letter{0, -1}).max_abs_diff(inverse(f)) == 0.0);
}

TEST_CASE("commutator h_n has linear part E and translation d_n") {
    for (double mu1 : {0.3, 0.5, 0.9})
        for (double mu3 : {0.3, 0.5, 0.9})
            for (double nu : {0.5, 1.5})
                for (int n = 1; n <= 30; ++n) {
                    const AffineMap h = commutator_h_n(testing::psi1(mu1, 0.5), testing::psi2(mu3, nu), n);
                    CHECK(max_abs_diff(h.linear(), Matrix::identity(2)) < 1e-10);
                    const double d = (std::pow(mu1, n) - 1.0) * (std::pow(mu3, n) - 1.0) / (mu3 - 1.0);
                    CHECK(std::abs(h.translation()[0] - d) < 1e-10);
                    CHECK(std::abs(h.translation()[1]) < 1e-10);
                }
    // delta_n is the translation of h_{n+1} o h_n^-1.
    const auto delta = [](int n) {
        return compose(commutator_h_n(testing::psi1(), testing::psi2(), n + 1), inverse(commutator_h_n(testing::psi1(), testing::psi2(), n)));
    };
    CHECK(std::abs(delta(1).translation()[0] - (-0.625)) < 1e-15);
    CHECK(std::abs(delta(2).translation()[0] - (-0.40625)) < 1e-15);
    CHECK(std::abs(delta(20).translation()[0]) < 1e-5);
}

TEST_CASE("group axioms on random maps") {
    SplitMix64 rng(11);
    for (int k = 0; k < 300; ++k) {
        const std::size_t q = 1 + rng.next() % 3;
        const AffineMap f = testing::random_map(rng, q), g = testing::random_map(rng, q), h = testing::random_map(rng, q);
        CHECK(compose(compose(f, g), h).max_abs_diff(compose(f, compose(g, h))) < 1e-10);
        CHECK(compose(f, inverse(f)).max_abs_diff(AffineMap::identity(q)) < 1e-9);
        CHECK(compose(inverse(f), f).max_abs_diff(AffineMap::identity(q)) < 1e-9);
    }
}

TEST_CASE("evaluate_word is a homomorphism from reduced words") {
    SplitMix64 rng(5);
    const GeneratorSet g(2, {{"a", diag2(0.5, 2.0, {1.0, 0.0})}, {"b", AffineMap(Matrix{{1.0, 1.0}, {0.0, 1.0}}, {0.0, 1.0})}});
    for (int k = 0; k < 200; ++k) {
        const Word u = random_word(rng, 2, 5), v = random_word(rng, 2, 5);
        const AffineMap lhs = evaluate_word(u * v, g);
        const AffineMap rhs = compose(evaluate_word(u, g), evaluate_word(v, g));
        CHECK(lhs.max_abs_diff(rhs) < 1e-9 * (1.0 + max_abs_entry(rhs.linear()) + max_abs(rhs.translation())));
    }
    CHECK(evaluate_word(Word(), g).is_identity());
}

TEST_CASE("linearization at the fixed point is exact in the flat chart") {
    SplitMix64 rng(21);
    int tested = 0;
    while (tested < 200) {
        const std::size_t q = 1 + rng.next() % 3;
        const AffineMap f = testing::random_map(rng, q);
        Linearization lin;
        try {
            lin = linearize_at_fixed_point(f);
        } catch (const Error&) {
            continue;
        }
        ++tested;
        Point x(q);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        const Point lhs = f(add(lin.fixed_point, x));
        const Point rhs = add(lin.fixed_point, lin.differential(x));
        for (std::size_t i = 0; i < q; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-10 * (1.0 + std::abs(rhs[i])));
    }
}
