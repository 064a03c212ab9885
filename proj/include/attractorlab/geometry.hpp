#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "attractorlab/linalg.hpp"

namespace attractorlab {

/// Axis-aligned box [lo_i, hi_i]; a zero-width axis (lo == hi) is allowed.
struct Box {
    Point lo;
    Point hi;

    std::size_t dim() const { return lo.size(); }
    bool contains(std::span<const double> p) const;
    void validate() const;

    friend bool operator==(const Box&, const Box&) = default;
};

struct AffineSubspace {
    std::size_t dim = 0;
    Point base;                 // centroid of the fitted points
    std::vector<Point> basis;   // orthonormal, `dim` vectors
    double residual = 0.0;      // max point-to-subspace distance

    double distance_to(std::span<const double> p) const;
};

/// Least-squares affine subspace of minimal dimension whose maximum
/// point-to-subspace distance is <= residual_tol. Principal directions come
/// from the centered second-moment matrix; basis vectors are sign-normalized
/// so their largest-magnitude component is positive. Throws Degenerate for
/// fewer than two points or identical points.
AffineSubspace fit_affine_subspace(const std::vector<Point>& points, double residual_tol);

/// Symmetric Hausdorff distance between finite sets. Throws EmptySet.
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);

/// Grid of spacing eps over the box: lo + k*eps for k = 0..floor((hi-lo)/eps),
/// plus hi when it is not already on the grid.
std::vector<Point> epsilon_grid(const Box& box, double eps);

/// Largest distance from a grid point of the box to its nearest input point
/// (spatial-hash implementation). Infinity for an empty input.
double coverage_gap(const std::vector<Point>& points, const Box& box, double eps);

/// coverage_gap <= eps, with a relative slack of 1e-9 for rounding ties.
bool is_epsilon_dense(const std::vector<Point>& points, const Box& box, double eps);

/// Greedy eps-net in input order: a point is kept unless it lies within eps of
/// an already kept point. Returns indices into `points`.
std::vector<std::size_t> greedy_net(const std::vector<Point>& points, double eps);

}  // namespace attractorlab
