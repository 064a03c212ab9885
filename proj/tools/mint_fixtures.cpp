// Mints the oracle fixtures consumed by the acceptance suite.
//
//   mint_fixtures DIR           write DIR/<id>.json for every fixture
//   mint_fixtures --check DIR   exit 1 unless every file matches a fresh mint
//
// Only the brute-force oracle is used here, never the engine.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "attractorlab/oracle/oracle.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace attractorlab::oracle;

namespace {

PlainAffine scaled_shift(double s, Vec t) {
    const std::size_t q = t.size();
    Mat m(q, Vec(q, 0.0));
    for (std::size_t i = 0; i < q; ++i) m[i][i] = s;
    return {m, std::move(t)};
}

json fixture(const std::string& id, const std::string& scenario, json parameters, json minted) {
    return {{"fixture_version", 1}, {"id", id}, {"scenario", scenario}, {"parameters", std::move(parameters)}, {"minted", std::move(minted)}};
}

// Smallest word budget at which the naive orbit of `base` is eps-dense in the box.
std::size_t density_budget(const std::vector<PlainAffine>& gens, const Vec& base, const Vec& lo, const Vec& hi, double eps, std::size_t limit) {
    for (std::size_t len = 0; len <= limit; ++len)
        if (density_check(naive_orbit(gens, base, len), lo, hi, eps)) return len;
    return 0;
}

std::vector<json> mint() {
    std::vector<json> out;

    // Example 4 with mu1 = mu2 = mu3 = nu = 1/2: translations delta_1, delta_2 of
    // the commutator sequence act on the x-axis with integer span step 1/32.
    {
        const double d1 = -0.625, d2 = -0.40625;
        const std::vector<PlainAffine> deltas{{{{1.0}}, {d1}}, {{{1.0}}, {d2}}};
        const Vec lo{-2.0}, hi{0.0};
        const double res = 1.0 / 32.0;
        const GridClosure g = grid_orbit_closure(deltas, {0.0}, lo, hi, res, 100'000'000);
        out.push_back(fixture("example-4-translation-closure", "example-4",
                              {{"deltas", {d1, d2}}, {"seed", {0.0}}, {"lo", lo}, {"hi", hi}, {"resolution", res}, {"margin", 0.0}},
                              {{"occupied", g.occupied_in_box()}, {"total_cells", g.total_cells()}, {"budget", g.budget_consumed},
                               {"rounds", g.rounds}, {"budget_exhausted", g.budget_exhausted}}));

        const std::vector<PlainAffine> psi{scaled_shift(0.5, {0.0, 0.0}), scaled_shift(0.5, {1.0, 0.0})};
        const Vec blo{-1.9, 0.0}, bhi{-0.1, 0.0};
        const double eps = 0.05;
        const std::size_t len = density_budget(psi, {0.0, 0.0}, blo, bhi, eps, 12);
        out.push_back(fixture("example-4-density-budget", "example-4",
                              {{"base", {0.0, 0.0}}, {"lo", blo}, {"hi", bhi}, {"epsilon", eps}, {"search_limit", 12}},
                              {{"word_budget", len}, {"dense", len > 0}}));
    }

    // Example 2 with lambda_i = 1/2.
    {
        const std::vector<PlainAffine> f{scaled_shift(0.5, {0.0, 0.0}), scaled_shift(0.5, {0.5, 0.0}), scaled_shift(0.5, {0.0, 0.5})};
        const Vec seed{0.3, 0.7}, lo{0.0, 0.0}, hi{1.0, 1.0};
        const double res = 0.05;
        const double margin = 1.0;
        const GridClosure g = grid_orbit_closure(f, seed, lo, hi, res, 100'000'000, margin);
        out.push_back(fixture("example-2-grid-closure", "example-2",
                              {{"seed", seed}, {"lo", lo}, {"hi", hi}, {"resolution", res}, {"margin", margin}},
                              {{"occupied", g.occupied_in_box()}, {"total_cells", g.total_cells()}, {"budget", g.budget_consumed},
                               {"rounds", g.rounds}, {"budget_exhausted", g.budget_exhausted}}));

        const std::size_t len = density_budget(f, seed, lo, hi, res, 9);
        out.push_back(fixture("example-2-density-budget", "example-2",
                              {{"base", seed}, {"lo", lo}, {"hi", hi}, {"epsilon", res}, {"search_limit", 9}},
                              {{"word_budget", len}, {"dense", len > 0}}));
    }

    // Example 1: every word is f_A^n, so the ball of radius 12 has 25 elements.
    {
        const std::vector<PlainAffine> fa{{{{0.5, 0.0}, {0.0, 2.0}}, {0.0, 0.0}}};
        double min_norm = INFINITY;
        std::size_t words = 0;
        for (int n = -12; n <= 12; ++n) {
            if (n == 0) continue;
            std::vector<PlainLetter> w(static_cast<std::size_t>(std::abs(n)), PlainLetter{0, n > 0 ? 1 : -1});
            min_norm = std::min(min_norm, power_iteration_norm(word_map(fa, w).m, 200));
            ++words;
        }
        out.push_back(fixture("example-1-certificate-search", "example-1", {{"max_len", 12}},
                              {{"nonempty_words", words}, {"min_operator_norm", min_norm}, {"contracting_word_found", min_norm < 1.0}}));
    }
    return out;
}

std::string text_of(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    const bool check = argc == 3 && std::string(argv[1]) == "--check";
    if (!(argc == 2 || check)) {
        std::cerr << "usage: mint_fixtures [--check] DIR\n";
        return 2;
    }
    const std::string dir = argv[argc - 1];
    int failures = 0;
    for (const auto& f : mint()) {
        const std::string path = dir + "/" + f["id"].get<std::string>() + ".json";
        if (check) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            if (!in || buf.str() != text_of(f)) {
                std::cerr << "stale or missing fixture: " << path << "\n";
                ++failures;
            } else {
                std::cout << "ok " << path << "\n";
            }
        } else {
            std::ofstream(path, std::ios::binary) << text_of(f);
            std::cout << "wrote " << path << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
