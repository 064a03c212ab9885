#include "attractorlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "attractorlab/error.hpp"
#include "attractorlab/spatial_hash.hpp"

namespace attractorlab {

bool Box::contains(std::span<const double> p) const {
    if (p.size() != dim()) throw DimensionMismatch("Box::contains dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i)
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
}

void Box::validate() const {
    if (lo.empty() || lo.size() != hi.size()) throw DimensionMismatch("box bounds must be nonempty and of equal dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i])) throw InvalidArgument("box lower bound exceeds upper bound on axis " + std::to_string(i));
}

double AffineSubspace::distance_to(std::span<const double> p) const {
    Point r = subtract(p, base);
    for (const auto& b : basis) {
        const double c = dot(r, b);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
    }
    return norm2(r);
}

AffineSubspace fit_affine_subspace(const std::vector<Point>& points, double residual_tol) {
    if (points.size() < 2) throw Degenerate("fit_affine_subspace needs at least two points");
    const std::size_t q = points.front().size();
    Point centroid(q, 0.0);
    for (const auto& p : points) {
        if (p.size() != q) throw DimensionMismatch("fit_affine_subspace: mixed point dimensions");
        for (std::size_t i = 0; i < q; ++i) centroid[i] += p[i];
    }
    for (double& c : centroid) c /= static_cast<double>(points.size());

    Matrix moment(q, q);
    double spread = 0.0;
    for (const auto& p : points) {
        const Point d = subtract(p, centroid);
        spread = std::max(spread, max_abs(d));
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) moment(i, j) += d[i] * d[j];
    }
    if (spread == 0.0) throw Degenerate("fit_affine_subspace: all points coincide");

    const SymmetricEigen eig = symmetric_eigen(moment);
    for (std::size_t d = 0; d <= q; ++d) {
        AffineSubspace s;
        s.dim = d;
        s.base = centroid;
        for (std::size_t j = 0; j < d; ++j) {
            Point v(q);
            for (std::size_t i = 0; i < q; ++i) v[i] = eig.vectors(i, j);
            const double n = norm2(v);
            for (double& x : v) x /= n;
            const auto big = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
            if (*big < 0.0)
                for (double& x : v) x = -x;
            s.basis.push_back(std::move(v));
        }
        for (const auto& p : points) s.residual = std::max(s.residual, s.distance_to(p));
        if (s.residual <= residual_tol || d == q) {
            if (d == q) s.residual = 0.0;
            return s;
        }
    }
    throw Degenerate("fit_affine_subspace: unreachable");
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.empty() || b.empty()) throw EmptySet("hausdorff_distance of an empty set");
    auto directed = [](const std::vector<Point>& from, const std::vector<Point>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& r : to) best = std::min(best, distance(p, r));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::vector<Point> epsilon_grid(const Box& box, double eps) {
    box.validate();
    if (!(eps > 0.0)) throw InvalidArgument("epsilon_grid: eps must be positive");
    std::vector<std::vector<double>> axes(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) {
        const double width = box.hi[i] - box.lo[i];
        const auto steps = static_cast<std::size_t>(std::floor(width / eps + 1e-9));
        for (std::size_t k = 0; k <= steps; ++k) axes[i].push_back(std::min(box.lo[i] + static_cast<double>(k) * eps, box.hi[i]));
        if (box.hi[i] - axes[i].back() > 1e-12 * std::max(1.0, std::abs(box.hi[i]))) axes[i].push_back(box.hi[i]);
    }
    std::vector<Point> grid;
    std::vector<std::size_t> idx(box.dim(), 0);
    for (;;) {
        Point p(box.dim());
        for (std::size_t i = 0; i < box.dim(); ++i) p[i] = axes[i][idx[i]];
        grid.push_back(std::move(p));
        std::size_t axis = 0;
        while (axis < box.dim() && ++idx[axis] == axes[axis].size()) idx[axis++] = 0;
        if (axis == box.dim()) break;
    }
    return grid;
}

double coverage_gap(const std::vector<Point>& points, const Box& box, double eps) {
    const auto grid = epsilon_grid(box, eps);
    if (points.empty()) return std::numeric_limits<double>::infinity();
    PointIndex index(box.dim(), eps);
    for (const auto& p : points) index.insert(p);

    double gap = 0.0;
    for (const auto& g : grid) {
        double found = std::numeric_limits<double>::infinity();
        for (double r = eps; std::isinf(found) && r <= 8.0 * eps; r *= 2.0)
            if (auto hit = index.nearest(g, r)) found = hit->second;
        if (std::isinf(found))
            for (const auto& p : points) found = std::min(found, distance(g, p));
        gap = std::max(gap, found);
    }
    return gap;
}

bool is_epsilon_dense(const std::vector<Point>& points, const Box& box, double eps) {
    // Distances that equal eps up to rounding count as covered.
    return coverage_gap(points, box, eps) <= eps * (1.0 + 1e-9);
}

std::vector<std::size_t> greedy_net(const std::vector<Point>& points, double eps) {
    std::vector<std::size_t> kept;
    if (points.empty()) return kept;
    PointIndex index(points.front().size(), eps);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (index.any_within(points[i], eps)) continue;
        index.insert(points[i]);
        kept.push_back(i);
    }
    return kept;
}

}  // namespace attractorlab
