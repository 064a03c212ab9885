#pragma once

// Brute-force reference computations used to mint fixtures and to cross-check
// the engine. Deliberately naive: no spatial hashing, no dedup shortcuts, and
// no reuse of the engine's composition or solver code.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace attractorlab::oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major rows

class DegenerateTestSet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain affine map x -> m x + t, evaluated by textbook loops.
struct PlainAffine {
    Mat m;
    Vec t;

    Vec operator()(const Vec& x) const;
};

/// Reconstructs the affine map whose values at `points` are `values` by
/// solving the interpolation system on q+1 affinely independent points.
/// Throws DegenerateTestSet otherwise.
PlainAffine reconstruct(const std::vector<Vec>& points, const std::vector<Vec>& values);

/// The map x -> f(g(x)) recovered from its evaluations at the test points.
PlainAffine pointwise_compose_oracle(const PlainAffine& f, const PlainAffine& g, const std::vector<Vec>& test_points);

/// Inverse of a plain map by Cramer-free Gauss-Jordan on [m | I].
PlainAffine plain_inverse(const PlainAffine& f);

/// A letter as (generator index, +1 or -1).
struct PlainLetter {
    std::size_t generator;
    int sign;
};

/// Evaluates a word pointwise: the rightmost letter acts first.
Vec apply_word(const std::vector<PlainAffine>& gens, const std::vector<PlainLetter>& word, const Vec& x);

/// The word's map reconstructed from evaluations at 0, e_1, ..., e_q.
PlainAffine word_map(const std::vector<PlainAffine>& gens, const std::vector<PlainLetter>& word);

struct GridClosure {
    Vec lo;
    Vec hi;
    double resolution = 0.0;
    /// Points are tracked in the box widened by this much on every side.
    double margin = 0.0;
    /// Cell indices relative to lo (negative or past the box inside the margin).
    std::set<std::vector<long long>> occupied;
    /// Generator applications performed.
    std::size_t budget_consumed = 0;
    /// Stopped by the budget before reaching a fixpoint.
    bool budget_exhausted = false;
    /// Breadth-first rounds completed.
    std::size_t rounds = 0;

    /// Cells of [lo, hi] itself.
    std::size_t total_cells() const;
    std::size_t occupied_in_box() const;
};

/// Breadth-first cell marking: every generator and inverse is applied to one
/// representative per occupied cell (the first point that reached it) until
/// no new cell appears or `budget` applications are spent. Points are kept
/// while they stay within `margin` of [lo, hi]; words that realize small
/// motions often leave the box on the way, so a zero margin can stall.
GridClosure grid_orbit_closure(const std::vector<PlainAffine>& gens, const Vec& seed, const Vec& lo, const Vec& hi,
                               double resolution, std::size_t budget, double margin = 0.0);

/// Every point of the eps-grid of [lo, hi] is within eps of some input point
/// (eps * (1 + 1e-9), so rounding ties count as covered).
bool density_check(const std::vector<Vec>& points, const Vec& lo, const Vec& hi, double eps);

/// Images of `base` under every freely reduced word of length <= max_len,
/// in shortlex order, with no deduplication.
std::vector<Vec> naive_orbit(const std::vector<PlainAffine>& gens, const Vec& base, std::size_t max_len);

/// Largest singular value by power iteration on m^T m.
double power_iteration_norm(const Mat& m, std::size_t steps);

}  // namespace attractorlab::oracle
