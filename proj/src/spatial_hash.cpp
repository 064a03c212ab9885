#include "attractorlab/spatial_hash.hpp"

#include <cmath>
#include <limits>

#include "attractorlab/error.hpp"

namespace attractorlab {

PointIndex::PointIndex(std::size_t dim, double cell) : dim_(dim), cell_(cell) {
    if (!(cell > 0.0)) throw InvalidArgument("PointIndex cell must be positive");
}

std::size_t PointIndex::KeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

std::vector<std::int64_t> PointIndex::key_of(std::span<const double> p) const {
    std::vector<std::int64_t> k(dim_);
    for (std::size_t i = 0; i < dim_; ++i) k[i] = static_cast<std::int64_t>(std::floor(p[i] / cell_));
    return k;
}

std::size_t PointIndex::insert(std::span<const double> p) {
    if (p.size() != dim_) throw DimensionMismatch("PointIndex::insert dimension mismatch");
    const std::size_t id = count_++;
    coords_.insert(coords_.end(), p.begin(), p.end());
    cells_[key_of(p)].push_back(id);
    return id;
}

template <typename Fn>
void PointIndex::scan(std::span<const double> p, double r, Fn&& fn) const {
    const auto center = key_of(p);
    const auto reach = static_cast<std::int64_t>(std::ceil(r / cell_));
    std::vector<std::int64_t> k(center);
    std::vector<std::int64_t> offset(dim_, -reach);
    for (;;) {
        for (std::size_t i = 0; i < dim_; ++i) k[i] = center[i] + offset[i];
        if (auto it = cells_.find(k); it != cells_.end())
            for (std::size_t id : it->second) {
                const double d = distance(p, point(id));
                if (!fn(id, d)) return;
            }
        std::size_t axis = 0;
        while (axis < dim_ && ++offset[axis] > reach) offset[axis++] = -reach;
        if (axis == dim_) break;
    }
}

bool PointIndex::any_within(std::span<const double> p, double r) const {
    bool found = false;
    scan(p, r, [&](std::size_t, double d) {
        if (d < r) found = true;
        return !found;
    });
    return found;
}

std::optional<std::pair<std::size_t, double>> PointIndex::nearest(std::span<const double> p, double r) const {
    std::optional<std::pair<std::size_t, double>> best;
    scan(p, r, [&](std::size_t id, double d) {
        if (d <= r && (!best || d < best->second || (d == best->second && id < best->first))) best = {id, d};
        return true;
    });
    return best;
}

void PointIndex::for_each_within(std::span<const double> p, double r, const std::function<void(std::size_t, double)>& fn) const {
    scan(p, r, [&](std::size_t id, double d) {
        if (d <= r) fn(id, d);
        return true;
    });
}

}  // namespace attractorlab
