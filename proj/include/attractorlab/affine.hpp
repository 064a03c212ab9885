#pragma once

// The affine group Aff(R^q): elements <A, a> acting by x -> A x + a, with
// composition <A,a> o <B,b> = <AB, Ab + a>.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "attractorlab/linalg.hpp"
#include "attractorlab/word.hpp"

namespace attractorlab {

/// A linear map of R^q, used for differentials at fixed points.
struct LinearMap {
    Matrix matrix;

    std::size_t dim() const { return matrix.rows(); }
    Point operator()(std::span<const double> x) const { return matrix * x; }
};

/// An invertible affine transformation <A, a>. Construction rejects linear
/// parts with |det A| <= 1e-12 * ||A||^q.
class AffineMap {
public:
    AffineMap(Matrix linear, Point translation);

    static AffineMap identity(std::size_t dim);
    static AffineMap translation_by(Point t);
    static AffineMap linear_only(Matrix a);

    std::size_t dim() const { return translation_.size(); }
    const Matrix& linear() const { return linear_; }
    const Point& translation() const { return translation_; }
    LinearMap linear_map() const { return {linear_}; }

    Point operator()(std::span<const double> x) const;

    /// Largest entrywise difference of both parts.
    double max_abs_diff(const AffineMap& other) const;
    bool is_identity(double tol = 0.0) const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    struct Unchecked {};
    AffineMap(Matrix linear, Point translation, Unchecked);
    friend AffineMap compose(const AffineMap&, const AffineMap&);
    friend AffineMap inverse(const AffineMap&);

    Matrix linear_;
    Point translation_;
};

/// f o g.
AffineMap compose(const AffineMap& f, const AffineMap& g);
AffineMap inverse(const AffineMap& f);
Point apply(const AffineMap& f, std::span<const double> x);
/// f^n by binary exponentiation; negative n uses the inverse, n = 0 is identity.
AffineMap power(const AffineMap& f, long long n);

/// Unique solution of (I - A) x = a. Throws NonUnique or NoFixedPoint when 1 is
/// an eigenvalue of A.
Point fixed_point(const AffineMap& f);

struct Linearization {
    Point fixed_point;
    LinearMap differential;
};

/// Fixed point v and the differential at v. In the flat chart Exp_v(X) = v + X
/// this is exact: f(v + X) = v + L X.
Linearization linearize_at_fixed_point(const AffineMap& f);

/// f^n o g^n o f^-n o g^-n.
AffineMap commutator_h_n(const AffineMap& f, const AffineMap& g, int n);

/// A finite ordered generating set with unique names and common dimension.
class GeneratorSet {
public:
    GeneratorSet() = default;
    GeneratorSet(std::size_t dim, std::vector<std::pair<std::string, AffineMap>> generators);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return maps_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<AffineMap>& maps() const { return maps_; }
    const AffineMap& map(std::size_t i) const { return maps_.at(i); }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    /// Map of a single letter (generator or its cached inverse).
    const AffineMap& letter_map(Letter l) const;

    /// FNV-1a hash over dimension and the bit patterns of every matrix and
    /// translation entry, in generator order. Names do not participate.
    std::uint64_t fingerprint() const;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> names_;
    std::vector<AffineMap> maps_;
    std::vector<AffineMap> inverses_;
};

/// Composition of the letters from left to right (the empty word is the
/// identity). Throws BadIndex for letters outside the generator set.
AffineMap evaluate_word(const Word& w, const GeneratorSet& gens);

}  // namespace attractorlab
