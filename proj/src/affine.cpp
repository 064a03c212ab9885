#include "attractorlab/affine.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "attractorlab/error.hpp"

namespace attractorlab {

namespace {

void check_invertible(const Matrix& a) {
    const double n = operator_norm(a);
    const double det = determinant(a);
    const double bound = 1e-12 * std::pow(n, static_cast<double>(a.rows()));
    if (!(std::abs(det) > bound)) throw NearSingular("affine map linear part is not invertible (|det| = " + std::to_string(std::abs(det)) + ")");
}

Matrix invert_matrix(const Matrix& a) {
    const std::size_t n = a.rows();
    Matrix m = a;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(max_abs_entry(a), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (std::abs(m(piv, k)) <= 1e-15 * scale) throw NearSingular("inverse: pivot below tolerance");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        const double d = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) /= d;
            inv(k, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = m(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace

AffineMap::AffineMap(Matrix linear, Point translation) : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (translation_.empty()) throw DimensionMismatch("affine map dimension must be positive");
    if (!linear_.square() || linear_.rows() != translation_.size())
        throw DimensionMismatch("affine map: linear part is " + std::to_string(linear_.rows()) + "x" + std::to_string(linear_.cols()) +
                                " but translation has length " + std::to_string(translation_.size()));
    check_invertible(linear_);
}

AffineMap::AffineMap(Matrix linear, Point translation, Unchecked)
    : linear_(std::move(linear)), translation_(std::move(translation)) {}

AffineMap AffineMap::identity(std::size_t dim) { return AffineMap(Matrix::identity(dim), Point(dim, 0.0)); }

AffineMap AffineMap::translation_by(Point t) {
    const std::size_t n = t.size();
    return AffineMap(Matrix::identity(n), std::move(t));
}

AffineMap AffineMap::linear_only(Matrix a) {
    const std::size_t n = a.rows();
    return AffineMap(std::move(a), Point(n, 0.0));
}

Point AffineMap::operator()(std::span<const double> x) const {
    if (x.size() != dim()) throw DimensionMismatch("apply: point has dimension " + std::to_string(x.size()) + ", map has " + std::to_string(dim()));
    const std::size_t n = dim();
    Point out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = translation_[i];
        for (std::size_t j = 0; j < n; ++j) s += linear_(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

double AffineMap::max_abs_diff(const AffineMap& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("comparing affine maps of different dimension");
    return std::max(attractorlab::max_abs_diff(linear_, other.linear_), max_abs(subtract(translation_, other.translation_)));
}

bool AffineMap::is_identity(double tol) const { return max_abs_diff(identity(dim())) <= tol; }

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("compose: dimensions " + std::to_string(f.dim()) + " and " + std::to_string(g.dim()));
    Matrix ab = f.linear() * g.linear();
    Point t = f.linear() * g.translation();
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += f.translation()[i];
    // The product of invertible maps is invertible; skip the determinant gate so
    // long words with tiny or huge scales stay representable.
    return AffineMap(std::move(ab), std::move(t), AffineMap::Unchecked{});
}

AffineMap inverse(const AffineMap& f) {
    Matrix inv = invert_matrix(f.linear());
    Point t = inv * f.translation();
    for (double& v : t) v = -v;
    return AffineMap(std::move(inv), std::move(t), AffineMap::Unchecked{});
}

Point apply(const AffineMap& f, std::span<const double> x) { return f(x); }

AffineMap power(const AffineMap& f, long long n) {
    AffineMap base = n < 0 ? inverse(f) : f;
    unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL : static_cast<unsigned long long>(n);
    AffineMap result = AffineMap::identity(f.dim());
    while (e > 0) {
        if (e & 1ULL) result = compose(result, base);
        e >>= 1;
        if (e) base = compose(base, base);
    }
    return result;
}

Point fixed_point(const AffineMap& f) {
    const Matrix system = Matrix::identity(f.dim()) - f.linear();
    const SolveResult r = solve_with_rank(system, f.translation());
    switch (r.status) {
        case SolveResult::Status::Unique: return r.x;
        case SolveResult::Status::Underdetermined: throw NonUnique("fixed_point: 1 is an eigenvalue and the fixed set is an affine subspace");
        case SolveResult::Status::Inconsistent: throw NoFixedPoint("fixed_point: 1 is an eigenvalue and (I - A) x = a is inconsistent");
    }
    throw NoFixedPoint("fixed_point: unreachable");
}

Linearization linearize_at_fixed_point(const AffineMap& f) { return {fixed_point(f), f.linear_map()}; }

AffineMap commutator_h_n(const AffineMap& f, const AffineMap& g, int n) {
    if (f.dim() != g.dim()) throw DimensionMismatch("commutator_h_n: dimension mismatch");
    if (n < 1) throw InvalidArgument("commutator_h_n: n must be >= 1");
    const AffineMap fn = power(f, n);
    const AffineMap gn = power(g, n);
    return compose(compose(fn, gn), compose(power(f, -n), power(g, -n)));
}

GeneratorSet::GeneratorSet(std::size_t dim, std::vector<std::pair<std::string, AffineMap>> generators) : dim_(dim) {
    if (dim == 0) throw DimensionMismatch("generator set dimension must be positive");
    std::set<std::string> seen;
    for (auto& [name, map] : generators) {
        if (map.dim() != dim)
            throw DimensionMismatch("generator '" + name + "' has dimension " + std::to_string(map.dim()) + ", expected " + std::to_string(dim));
        if (!seen.insert(name).second) throw InvalidArgument("duplicate generator name '" + name + "'");
        names_.push_back(name);
        inverses_.push_back(inverse(map));
        maps_.push_back(std::move(map));
    }
}

const AffineMap& GeneratorSet::letter_map(Letter l) const {
    if (l.generator >= maps_.size()) throw BadIndex("letter refers to generator " + std::to_string(l.generator) + " of " + std::to_string(maps_.size()));
    return l.sign > 0 ? maps_[l.generator] : inverses_[l.generator];
}

std::uint64_t GeneratorSet::fingerprint() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    mix(dim_);
    mix(maps_.size());
    for (const auto& m : maps_) {
        for (double v : m.linear().data()) mix(std::bit_cast<std::uint64_t>(v));
        for (double v : m.translation()) mix(std::bit_cast<std::uint64_t>(v));
    }
    return h;
}

AffineMap evaluate_word(const Word& w, const GeneratorSet& gens) {
    AffineMap result = AffineMap::identity(gens.dim());
    for (const Letter& l : w.letters()) result = compose(result, gens.letter_map(l));
    return result;
}

}  // namespace attractorlab
