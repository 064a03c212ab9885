#include "attractorlab/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace attractorlab::oracle {

Vec PlainAffine::operator()(const Vec& x) const {
    Vec y = t;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

namespace {

// Solves a x = b in place by Gauss-Jordan with partial pivoting; false if singular.
bool gauss_jordan(Mat a, Mat& b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-12) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const double d = a[col][col];
        for (auto& v : a[col]) v /= d;
        for (auto& v : b[col]) v /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0.0) continue;
            const double f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
            for (std::size_t c = 0; c < b[r].size(); ++c) b[r][c] -= f * b[col][c];
        }
    }
    return true;
}

}  // namespace

PlainAffine reconstruct(const std::vector<Vec>& points, const std::vector<Vec>& values) {
    if (points.empty() || points.size() != values.size()) throw DegenerateTestSet("need matching nonempty point and value lists");
    const std::size_t q = points[0].size();
    if (points.size() < q + 1) throw DegenerateTestSet("need at least q+1 test points");
    // Unknown row i of [m | t] satisfies [x 1] . row = value_i for each point;
    // the first q+1 points give a square system.
    Mat a(q + 1, Vec(q + 1));
    Mat b(q + 1, Vec(q));
    for (std::size_t k = 0; k <= q; ++k) {
        for (std::size_t j = 0; j < q; ++j) a[k][j] = points[k][j];
        a[k][q] = 1.0;
        b[k] = values[k];
    }
    if (!gauss_jordan(a, b)) throw DegenerateTestSet("test points are not affinely independent");
    PlainAffine out{Mat(q, Vec(q)), Vec(q)};
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = 0; j < q; ++j) out.m[i][j] = b[j][i];
        out.t[i] = b[q][i];
    }
    return out;
}

PlainAffine pointwise_compose_oracle(const PlainAffine& f, const PlainAffine& g, const std::vector<Vec>& test_points) {
    std::vector<Vec> values;
    for (const auto& x : test_points) values.push_back(f(g(x)));
    return reconstruct(test_points, values);
}

PlainAffine plain_inverse(const PlainAffine& f) {
    const std::size_t q = f.t.size();
    Mat id(q, Vec(q, 0.0));
    for (std::size_t i = 0; i < q; ++i) id[i][i] = 1.0;
    if (!gauss_jordan(f.m, id)) throw DegenerateTestSet("map is singular");
    PlainAffine inv{id, Vec(q, 0.0)};
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) inv.t[i] -= id[i][j] * f.t[j];
    return inv;
}

Vec apply_word(const std::vector<PlainAffine>& gens, const std::vector<PlainLetter>& word, const Vec& x) {
    Vec y = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const PlainAffine& g = gens.at(it->generator);
        y = it->sign > 0 ? g(y) : plain_inverse(g)(y);
    }
    return y;
}

PlainAffine word_map(const std::vector<PlainAffine>& gens, const std::vector<PlainLetter>& word) {
    const std::size_t q = gens.at(0).t.size();
    std::vector<Vec> pts{Vec(q, 0.0)};
    for (std::size_t i = 0; i < q; ++i) {
        Vec e(q, 0.0);
        e[i] = 1.0;
        pts.push_back(e);
    }
    std::vector<Vec> vals;
    for (const auto& p : pts) vals.push_back(apply_word(gens, word, p));
    return reconstruct(pts, vals);
}

namespace {

std::vector<long long> box_cells(const GridClosure& g) {
    std::vector<long long> n(g.lo.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = static_cast<long long>(std::ceil((g.hi[i] - g.lo[i]) / g.resolution - 1e-9));
    return n;
}

}  // namespace

std::size_t GridClosure::total_cells() const {
    std::size_t n = 1;
    for (long long c : box_cells(*this)) n *= static_cast<std::size_t>(c);
    return n;
}

std::size_t GridClosure::occupied_in_box() const {
    const auto n = box_cells(*this);
    std::size_t count = 0;
    for (const auto& c : occupied) {
        bool inside = true;
        for (std::size_t i = 0; i < c.size(); ++i) inside = inside && c[i] >= 0 && c[i] < n[i];
        count += inside ? 1 : 0;
    }
    return count;
}

GridClosure grid_orbit_closure(const std::vector<PlainAffine>& gens, const Vec& seed, const Vec& lo, const Vec& hi,
                               double resolution, std::size_t budget, double margin) {
    if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
    if (!(margin >= 0.0)) throw std::invalid_argument("margin must be nonnegative");
    GridClosure out;
    out.lo = lo;
    out.hi = hi;
    out.resolution = resolution;
    out.margin = margin;
    const std::size_t q = lo.size();
    const auto n = box_cells(out);

    auto tracked = [&](const Vec& p) {
        for (std::size_t i = 0; i < q; ++i)
            if (p[i] < lo[i] - margin || p[i] > hi[i] + margin) return false;
        return true;
    };
    auto cell_of = [&](const Vec& p) {
        std::vector<long long> c(q);
        for (std::size_t i = 0; i < q; ++i) {
            c[i] = static_cast<long long>(std::floor((p[i] - lo[i]) / resolution));
            // The upper faces of the box belong to the last cell.
            if (p[i] == hi[i] && c[i] == n[i]) c[i] = n[i] - 1;
        }
        return c;
    };

    std::vector<PlainAffine> maps;
    for (const auto& g : gens) {
        maps.push_back(g);
        maps.push_back(plain_inverse(g));
    }

    std::vector<Vec> frontier;
    if (tracked(seed)) {
        out.occupied.insert(cell_of(seed));
        frontier.push_back(seed);
    }
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& p : frontier)
            for (const auto& f : maps) {
                if (out.budget_consumed >= budget) {
                    out.budget_exhausted = true;
                    return out;
                }
                ++out.budget_consumed;
                Vec y = f(p);
                if (!tracked(y)) continue;
                if (out.occupied.insert(cell_of(y)).second) next.push_back(std::move(y));
            }
        frontier = std::move(next);
        ++out.rounds;
    }
    return out;
}

bool density_check(const std::vector<Vec>& points, const Vec& lo, const Vec& hi, double eps) {
    if (points.empty()) return false;
    const std::size_t q = lo.size();
    std::vector<Vec> axes(q);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t k = 0;; ++k) {
            const double v = lo[i] + static_cast<double>(k) * eps;
            if (v > hi[i] + 1e-9 * eps) break;
            axes[i].push_back(std::min(v, hi[i]));
        }
        if (hi[i] - axes[i].back() > 1e-12 * std::max(1.0, std::abs(hi[i]))) axes[i].push_back(hi[i]);
    }
    std::vector<std::size_t> idx(q, 0);
    for (;;) {
        Vec g(q);
        for (std::size_t i = 0; i < q; ++i) g[i] = axes[i][idx[i]];
        bool covered = false;
        for (const auto& p : points) {
            double s = 0.0;
            for (std::size_t i = 0; i < q; ++i) s += (p[i] - g[i]) * (p[i] - g[i]);
            if (std::sqrt(s) <= eps * (1.0 + 1e-9)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
        std::size_t axis = 0;
        while (axis < q && ++idx[axis] == axes[axis].size()) idx[axis++] = 0;
        if (axis == q) return true;
    }
}

std::vector<Vec> naive_orbit(const std::vector<PlainAffine>& gens, const Vec& base, std::size_t max_len) {
    std::vector<std::vector<PlainLetter>> layer{{}};
    std::vector<Vec> out{base};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<PlainLetter>> next;
        for (const auto& w : layer)
            for (std::size_t g = 0; g < gens.size(); ++g)
                for (int s : {1, -1}) {
                    if (!w.empty() && w.back().generator == g && w.back().sign == -s) continue;
                    auto v = w;
                    v.push_back({g, s});
                    next.push_back(std::move(v));
                }
        for (const auto& w : next) out.push_back(apply_word(gens, w, base));
        layer = std::move(next);
    }
    return out;
}

double power_iteration_norm(const Mat& m, std::size_t steps) {
    const std::size_t n = m.empty() ? 0 : m[0].size();
    Vec v(n, 1.0);
    double lambda = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        Vec mv(m.size(), 0.0);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) mv[i] += m[i][j] * v[j];
        Vec w(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m.size(); ++i) w[j] += m[i][j] * mv[i];
        double nw = 0.0;
        for (double x : w) nw += x * x;
        nw = std::sqrt(nw);
        if (nw == 0.0) return 0.0;
        for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nw;
        lambda = nw;
    }
    return std::sqrt(lambda);
}

}  // namespace attractorlab::oracle
