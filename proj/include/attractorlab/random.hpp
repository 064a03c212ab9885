#pragma once

#include <cstdint>
#include <vector>

namespace attractorlab {

/// SplitMix64. Used both as a stream and to derive independent per-sample
/// streams from a (seed, index) pair, so sampled evidence does not depend on
/// evaluation order or thread count.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Stream for sample `index` under `seed`.
    static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        return SplitMix64(mixer.next() ^ index);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform point in the Euclidean ball of the given radius (rejection from the cube).
    std::vector<double> in_ball(const std::vector<double>& center, double radius) {
        const std::size_t q = center.size();
        std::vector<double> offset(q);
        for (;;) {
            double r2 = 0.0;
            for (auto& v : offset) {
                v = uniform(-1.0, 1.0);
                r2 += v * v;
            }
            if (r2 <= 1.0) break;
        }
        std::vector<double> out(q);
        for (std::size_t i = 0; i < q; ++i) out[i] = center[i] + radius * offset[i];
        return out;
    }

private:
    std::uint64_t state_;
};

}  // namespace attractorlab
