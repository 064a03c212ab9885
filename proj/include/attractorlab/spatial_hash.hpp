#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "attractorlab/linalg.hpp"

namespace attractorlab {

/// Uniform-grid point index. Queries with radius r scan ceil(r / cell)
/// neighbouring cells per axis, so the cell should be on the order of the
/// typical query radius.
class PointIndex {
public:
    PointIndex(std::size_t dim, double cell);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return count_; }
    double cell() const { return cell_; }

    std::size_t insert(std::span<const double> p);
    std::span<const double> point(std::size_t id) const { return {coords_.data() + id * dim_, dim_}; }

    /// True when some stored point lies at distance < r.
    bool any_within(std::span<const double> p, double r) const;
    /// Nearest stored point at distance <= r (ties go to the lower id).
    std::optional<std::pair<std::size_t, double>> nearest(std::span<const double> p, double r) const;
    /// Visits every stored point at distance <= r.
    void for_each_within(std::span<const double> p, double r, const std::function<void(std::size_t, double)>& fn) const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
    };
    std::vector<std::int64_t> key_of(std::span<const double> p) const;
    template <typename Fn>
    void scan(std::span<const double> p, double r, Fn&& fn) const;

    std::size_t dim_;
    double cell_;
    std::size_t count_ = 0;
    std::vector<double> coords_;
    std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> cells_;
};

}  // namespace attractorlab
