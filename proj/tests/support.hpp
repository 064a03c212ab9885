#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "attractorlab/affine.hpp"
#include "attractorlab/oracle/oracle.hpp"
#include "attractorlab/random.hpp"
#include "json.hpp"

namespace testing {

using attractorlab::AffineMap;
using attractorlab::GeneratorSet;
using attractorlab::Matrix;
using attractorlab::Point;

inline AffineMap diag2(double a, double b, Point t = {0.0, 0.0}) { return AffineMap(Matrix{{a, 0.0}, {0.0, b}}, std::move(t)); }

/// <diag(1/2, 2)>.
inline GeneratorSet example1() { return GeneratorSet(2, {{"fA", diag2(0.5, 2.0)}}); }

/// f0 = x/2, f1 = (x - e1)/2 + e1, f2 = (x - e2)/2 + e2.
inline GeneratorSet example2() {
    return GeneratorSet(2, {{"f0", diag2(0.5, 0.5)}, {"f1", diag2(0.5, 0.5, {0.5, 0.0})}, {"f2", diag2(0.5, 0.5, {0.0, 0.5})}});
}

/// <x -> 2x> on the line.
inline GeneratorSet example3() { return GeneratorSet(1, {{"gamma", AffineMap(Matrix{{2.0}}, {0.0})}}); }

/// psi1 = <diag(mu1, mu2), 0>, psi2 = <diag(mu3, nu), (1, 0)>.
inline AffineMap psi1(double mu1 = 0.5, double mu2 = 0.5) { return diag2(mu1, mu2); }
inline AffineMap psi2(double mu3 = 0.5, double nu = 0.5) { return diag2(mu3, nu, {1.0, 0.0}); }
inline GeneratorSet example4() { return GeneratorSet(2, {{"psi1", psi1()}, {"psi2", psi2()}}); }

/// Plain copy of a generator set for the oracle.
inline std::vector<attractorlab::oracle::PlainAffine> plain(const GeneratorSet& g) {
    std::vector<attractorlab::oracle::PlainAffine> out;
    for (const auto& m : g.maps()) out.push_back({m.linear().to_rows(), m.translation()});
    return out;
}

inline attractorlab::oracle::PlainAffine plain(const AffineMap& m) { return {m.linear().to_rows(), m.translation()}; }

/// Random map with entries in [-2, 2] and |det| > min_det.
inline AffineMap random_map(attractorlab::SplitMix64& rng, std::size_t q, double min_det = 1e-3) {
    for (;;) {
        Matrix a(q, q);
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
        if (std::abs(attractorlab::determinant(a)) <= min_det) continue;
        Point t(q);
        for (auto& v : t) v = rng.uniform(-2.0, 2.0);
        return AffineMap(a, t);
    }
}

inline std::string fixture_dir() {
    const char* dir = std::getenv("ATTRACTORLAB_FIXTURES");
    if (!dir) throw std::runtime_error("ATTRACTORLAB_FIXTURES is not set");
    return dir;
}

inline nlohmann::json load_fixture(const std::string& id) {
    const std::string path = fixture_dir() + "/" + id + ".json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return nlohmann::json::parse(buf.str());
}

}  // namespace testing
