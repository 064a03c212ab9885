#include "attractorlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "attractorlab/error.hpp"
#include "attractorlab/parallel.hpp"
#include "attractorlab/random.hpp"
#include "attractorlab/spatial_hash.hpp"

namespace attractorlab {

std::string to_string(CertificateKind k) { return k == CertificateKind::OperatorNorm ? "OperatorNorm" : "SpectralRadius"; }

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Positive: return "Positive";
        case Verdict::Negative: return "Negative";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

struct CertificateSearcher {
    const GeneratorSet& gens;
    double threshold;
    std::size_t word_cap;
    std::size_t examined = 0;
    std::vector<Letter> letters;
    std::vector<Matrix> prefix;  // prefix[d] = linear part of letters[0..d)

    std::optional<std::pair<Word, CertificateKind>> at_depth(std::size_t depth, std::size_t target, double& value) {
        if (depth == target) {
            if (++examined > word_cap) throw BudgetExceeded("contraction_certificate: word cap " + std::to_string(word_cap) + " exceeded");
            const Matrix& a = prefix[depth];
            const double n = operator_norm(a);
            if (n < threshold) {
                value = n;
                return std::pair{Word(letters), CertificateKind::OperatorNorm};
            }
            const double r = spectral_radius(a);
            if (r < threshold) {
                value = r;
                return std::pair{Word(letters), CertificateKind::SpectralRadius};
            }
            return std::nullopt;
        }
        for (std::uint32_t c = 0; c < 2 * gens.rank(); ++c) {
            const Letter l = Letter::from_code(c);
            if (depth > 0 && letters[depth - 1].cancels(l)) continue;
            letters[depth] = l;
            prefix[depth + 1] = prefix[depth] * gens.letter_map(l).linear();
            if (auto hit = at_depth(depth + 1, target, value)) return hit;
        }
        return std::nullopt;
    }
};

}  // namespace

std::optional<Certificate> contraction_certificate(const GeneratorSet& gens, std::size_t max_len, double tol_cert, std::size_t word_cap) {
    if (max_len < 1) throw InvalidArgument("contraction_certificate: max_len must be >= 1");
    if (gens.rank() == 0) return std::nullopt;
    CertificateSearcher s{gens, 1.0 - tol_cert, word_cap, 0, {}, {}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        s.letters.assign(len, Letter{});
        s.prefix.assign(len + 1, Matrix::identity(gens.dim()));
        double value = 0.0;
        if (auto hit = s.at_depth(0, len, value)) {
            Certificate cert;
            cert.word = hit->first;
            cert.kind = hit->second;
            cert.value = value;
            cert.fixed_point = fixed_point(evaluate_word(cert.word, gens));
            return cert;
        }
    }
    return std::nullopt;
}

int contracting_power(const Certificate& cert, const GeneratorSet& gens, double tol) {
    const Matrix a = evaluate_word(cert.word, gens).linear();
    Matrix p = a;
    for (int k = 1; k <= 10000; ++k) {
        if (operator_norm(p) < 1.0 - tol) return k;
        p = p * a;
    }
    throw ConvergenceFailure("contracting_power: no contracting power below 10^4");
}

// ---------------------------------------------------------------------------
// Local limit points

LimitPointEvidence detect_local_limit_point(const GeneratorSet& gens, std::span<const double> candidate, const LimitPointOptions& opts) {
    if (candidate.size() != gens.dim()) throw DimensionMismatch("detect_local_limit_point: candidate dimension mismatch");
    if (!(opts.radius > opts.delta && opts.delta > 0.0)) throw InvalidArgument("detect_local_limit_point: need radius > delta > 0");

    LimitPointEvidence ev;
    ev.candidate.assign(candidate.begin(), candidate.end());
    ev.neighborhood_radius = opts.radius;
    ev.delta = opts.delta;
    ev.seed = opts.seed;

    OrbitOptions oo;
    oo.max_len = opts.candidate_orbit_len;
    oo.dedup_eps = opts.dedup_eps;
    oo.point_cap = 200'000;
    oo.throw_on_cap = false;
    const OrbitSample own = orbit(candidate, gens, oo);
    PointIndex own_index(gens.dim(), opts.delta);
    for (const auto& e : own.entries) own_index.insert(e.point);

    const std::size_t n_probes = opts.probes.size();
    const std::size_t total = n_probes + opts.n_samples;
    std::vector<std::optional<ProbeOutcome>> slots(total);
    const Point center = ev.candidate;
    auto objective = [&center](std::span<const double> p) { return distance(p, center); };
    SearchOptions so;
    so.max_len = opts.max_len;
    so.dedup_eps = opts.dedup_eps;
    so.node_cap = opts.node_cap;

    parallel_for(total, opts.threads, [&](std::size_t i) {
        Point y;
        if (i < n_probes) {
            y = opts.probes[i];
            if (y.size() != gens.dim()) throw DimensionMismatch("detect_local_limit_point: probe dimension mismatch");
        } else {
            SplitMix64 rng = SplitMix64::for_sample(opts.seed, i - n_probes);
            bool ok = false;
            for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
                y = rng.in_ball(center, opts.radius);
                ok = !own_index.any_within(y, opts.delta);
            }
            if (!ok) return;
        }
        const SearchResult r = search_orbit(y, gens, objective, opts.delta, so);
        ProbeOutcome out;
        out.sample = std::move(y);
        out.attracted = r.reached;
        out.exhausted = r.exhausted;
        out.closest = r.distance;
        out.word_length = r.word.length();
        out.explicit_probe = i < n_probes;
        slots[i] = std::move(out);
    });

    bool definitive_miss = false;
    for (auto& s : slots) {
        if (!s) {
            ++ev.rejected;
            continue;
        }
        ++ev.samples_tested;
        if (s->attracted) ++ev.samples_attracted;
        else if (s->exhausted) definitive_miss = true;
        ev.samples.push_back(std::move(*s));
    }
    if (ev.samples_tested >= opts.min_samples && ev.samples_attracted == ev.samples_tested)
        ev.verdict = Verdict::Positive;
    else if (definitive_miss)
        ev.verdict = Verdict::Negative;
    else
        ev.verdict = Verdict::Inconclusive;
    return ev;
}

// ---------------------------------------------------------------------------
// Attractor evidence

double AttractorSet::distance_to(std::span<const double> p) const {
    if (subspace && subspace->dim < p.size()) return subspace->distance_to(p);
    if (points.empty()) throw EmptySet("AttractorSet::distance_to on an empty set");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& k : points) best = std::min(best, distance(p, k));
    return best;
}

std::size_t BasinEvidence::attracted_count() const {
    return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const BasinSample& s) { return s.attracted; }));
}

namespace {

// Routes orbits of arbitrary points onto the eps-net of K. With a hub
// (contracting word c fixing K's base), the witness for net point z from
// start y is u_z o c^k, where u_z carries the base to z; each candidate is
// checked by direct evaluation. Without a hub, a best-first orbit search
// toward each net point is used instead.
class Prober {
public:
    Prober(const AttractorSet& k, const GeneratorSet& gens, double epsilon, std::size_t max_len, const VerifyOptions& opts)
        : k_(k), gens_(gens), eps_(epsilon), max_len_(max_len), opts_(opts), index_(gens.dim(), epsilon) {
        if (k.points.empty()) throw EmptySet("attractor set is empty");
        for (const auto& p : k.points) {
            if (p.size() != gens.dim()) throw DimensionMismatch("attractor point dimension mismatch");
            index_.insert(p);
        }
        std::vector<Point> windowed;
        std::vector<std::size_t> windowed_ids;
        for (std::size_t i = 0; i < k.points.size(); ++i)
            if (!k.window || k.window->contains(k.points[i])) {
                windowed.push_back(k.points[i]);
                windowed_ids.push_back(i);
            }
        if (windowed.empty()) throw EmptySet("no attractor points inside the net window");
        for (std::size_t j : greedy_net(windowed, eps_)) {
            net_.push_back(windowed[j]);
            net_ids_.push_back(windowed_ids[j]);
        }

        if (k.hub) {
            hub_map_ = evaluate_word(k.hub->word, gens);
            hub_len_ = k.hub->word.length();
            const bool have_words = !k.words.empty() && k.words.size() == k.points.size();
            std::optional<OrbitSample> hub_orbit;
            if (!have_words) {
                OrbitOptions oo;
                oo.max_len = opts.hub_orbit_len;
                oo.dedup_eps = opts.dedup_eps;
                oo.point_cap = 500'000;
                oo.throw_on_cap = false;
                oo.threads = opts.threads;
                hub_orbit = orbit(k.hub->fixed_point, gens, oo);
            }
            for (std::size_t n = 0; n < net_.size(); ++n) {
                Word w;
                if (have_words) {
                    w = k.words[net_ids_[n]];
                } else {
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& e : hub_orbit->entries)
                        if (const double d = distance(e.point, net_[n]); d < best) {
                            best = d;
                            w = e.word;
                        }
                }
                routes_.push_back({evaluate_word(w, gens), w.length()});
            }
        }
    }

    const std::vector<Point>& net() const { return net_; }

    bool in_thickening(std::span<const double> p, double r) const { return index_.any_within(p, r); }

    double distance_to_k(std::span<const double> p) const {
        if (k_.subspace && k_.subspace->dim < p.size()) return k_.subspace->distance_to(p);
        for (double r = eps_; r <= 8.0 * eps_; r *= 2.0)
            if (auto hit = index_.nearest(p, r)) return hit->second;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : k_.points) best = std::min(best, distance(p, q));
        return best;
    }

    /// Closest approach to each net point (skipping `skip`), and to K itself.
    BasinSample probe(const Point& y, std::size_t skip = static_cast<std::size_t>(-1), std::vector<double>* gaps_out = nullptr) const {
        BasinSample out;
        out.sample = y;
        std::vector<double> gaps(net_.size(), std::numeric_limits<double>::infinity());
        if (skip < gaps.size()) gaps[skip] = 0.0;

        if (k_.hub) {
            const std::size_t kmax = hub_len_ == 0 ? 0 : max_len_ / hub_len_;
            std::vector<Point> path;
            path.reserve(kmax + 1);
            path.push_back(y);
            for (std::size_t k = 1; k <= kmax; ++k) path.push_back((*hub_map_)(path.back()));

            out.min_distance = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < path.size(); ++k) {
                const double d = distance_to_k(path[k]);
                if (d < out.min_distance) {
                    out.min_distance = d;
                    out.word_length = k * hub_len_;
                }
                if (d < opts_.approach_tol) break;
            }
            for (std::size_t n = 0; n < net_.size(); ++n) {
                if (n == skip) continue;
                const auto& route = routes_[n];
                for (std::size_t k = 0; k < path.size() && k * hub_len_ + route.length <= max_len_; ++k) {
                    const double g = distance(route.map(path[k]), net_[n]);
                    gaps[n] = std::min(gaps[n], g);
                    if (g < eps_) break;
                }
            }
        } else {
            SearchOptions so;
            so.max_len = max_len_;
            so.dedup_eps = opts_.dedup_eps;
            so.node_cap = opts_.node_cap;
            const SearchResult a = search_orbit(y, gens_, [this](std::span<const double> p) { return distance_to_k(p); }, opts_.approach_tol, so);
            out.min_distance = a.distance;
            out.word_length = a.word.length();
            for (std::size_t n = 0; n < net_.size(); ++n) {
                if (n == skip) continue;
                const Point& z = net_[n];
                gaps[n] = search_orbit(y, gens_, [&z](std::span<const double> p) { return distance(p, z); }, eps_, so).distance;
            }
        }
        out.worst_gap = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
        out.attracted = out.worst_gap < eps_;
        if (gaps_out) *gaps_out = std::move(gaps);
        return out;
    }

private:
    struct Route {
        AffineMap map;
        std::size_t length;
    };

    const AttractorSet& k_;
    const GeneratorSet& gens_;
    double eps_;
    std::size_t max_len_;
    VerifyOptions opts_;
    PointIndex index_;
    std::vector<Point> net_;
    std::vector<std::size_t> net_ids_;
    std::optional<AffineMap> hub_map_;
    std::size_t hub_len_ = 0;
    std::vector<Route> routes_;
};

template <typename Draw>
BasinEvidence sample_basin(const Prober& prober, const VerifyOptions& opts, std::uint64_t seed, Draw&& draw) {
    BasinEvidence ev;
    ev.net_size = prober.net().size();
    ev.epsilon = opts.epsilon;
    ev.seed = seed;
    const std::size_t n_probes = opts.probes.size();
    const std::size_t total = n_probes + opts.n_samples;
    std::vector<std::optional<BasinSample>> slots(total);
    parallel_for(total, opts.threads, [&](std::size_t i) {
        Point y;
        if (i < n_probes) {
            y = opts.probes[i];
        } else {
            SplitMix64 rng = SplitMix64::for_sample(seed, i - n_probes);
            bool ok = false;
            for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
                y = draw(rng);
                ok = !prober.in_thickening(y, opts.epsilon);
            }
            if (!ok) return;
        }
        BasinSample s = prober.probe(y);
        s.explicit_probe = i < n_probes;
        slots[i] = std::move(s);
    });
    for (auto& s : slots) {
        if (s)
            ev.samples.push_back(std::move(*s));
        else
            ++ev.rejected;
    }
    return ev;
}

}  // namespace

BasinEvidence verify_attractor(const AttractorSet& k, const GeneratorSet& gens, const VerifyOptions& opts) {
    const Prober prober(k, gens, opts.epsilon, opts.max_len, opts);
    const auto& net = prober.net();
    return sample_basin(prober, opts, opts.seed, [&](SplitMix64& rng) {
        const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(net.size()));
        return rng.in_ball(net[std::min(pick, net.size() - 1)], opts.neighborhood_radius);
    });
}

BasinEvidence global_check(const AttractorSet& k, const GeneratorSet& gens, const Box& domain, const VerifyOptions& opts) {
    domain.validate();
    if (domain.dim() != gens.dim()) throw DimensionMismatch("global_check: domain dimension mismatch");
    const Prober prober(k, gens, opts.epsilon, opts.max_len, opts);
    return sample_basin(prober, opts, opts.seed, [&](SplitMix64& rng) {
        Point y(domain.dim());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = rng.uniform(domain.lo[i], domain.hi[i]);
        return y;
    });
}

MinimalityEvidence minimality_check(const AttractorSet& k, const GeneratorSet& gens, double epsilon, std::size_t max_len,
                                    const VerifyOptions& opts) {
    const Prober prober(k, gens, epsilon, max_len, opts);
    const auto& net = prober.net();
    MinimalityEvidence ev;
    ev.net_size = net.size();
    std::vector<std::vector<double>> rows(net.size());
    parallel_for(net.size(), opts.threads, [&](std::size_t i) { prober.probe(net[i], i, &rows[i]); });
    for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = 0; j < net.size(); ++j) {
            if (i == j) continue;
            ++ev.pairs_checked;
            ev.worst_gap = std::max(ev.worst_gap, rows[i][j]);
            if (!(rows[i][j] < epsilon)) {
                ++ev.failures;
                if (ev.failed_pairs.size() < 16) ev.failed_pairs.emplace_back(i, j);
            }
        }
    ev.minimal = ev.failures == 0;
    return ev;
}

// ---------------------------------------------------------------------------
// Detection pipeline

namespace {

constexpr std::uint64_t kGlobalSeedSalt = 0x676c6f62616c0001ULL;

Box cube_around(const Point& c, double half) {
    Box b{c, c};
    for (std::size_t i = 0; i < c.size(); ++i) {
        b.lo[i] -= half;
        b.hi[i] += half;
    }
    return b;
}

VerifyOptions verify_options(const DetectParams& p) {
    VerifyOptions v;
    v.neighborhood_radius = p.neighborhood_radius;
    v.n_samples = p.n_samples;
    v.max_len = p.orbit_len;
    v.epsilon = p.epsilon;
    v.approach_tol = p.approach_tol;
    v.seed = p.seed;
    v.dedup_eps = p.dedup_eps;
    v.hub_orbit_len = p.attractor_len;
    v.node_cap = p.node_cap;
    v.threads = p.threads;
    return v;
}

std::optional<AttractorReport> evaluate_candidate(const GeneratorSet& gens, const DetectParams& p, const Point& seed_point,
                                                  const std::optional<Certificate>& hub) {
    OrbitOptions oo;
    oo.max_len = p.attractor_len;
    oo.dedup_eps = p.dedup_eps;
    oo.point_cap = p.point_cap;
    oo.threads = p.threads;
    const OrbitSample sample = orbit(seed_point, gens, oo);

    AttractorReport report;
    report.generator_fingerprint = gens.fingerprint();
    report.certificate = hub;
    report.sample_invariant = is_generator_invariant(sample, gens);
    report.neighborhood_note = "basin sampled in a metric neighbourhood of K; invariance of that neighbourhood is not established";

    AttractorSet& k = report.attractor;
    for (const auto& e : sample.entries) {
        k.points.push_back(e.point);
        k.words.push_back(e.word);
    }
    k.base = seed_point;
    k.hub = hub;
    k.window = cube_around(seed_point, p.net_radius);
    if (k.points.size() >= 2) {
        try {
            k.subspace = fit_affine_subspace(k.points, p.residual_tol);
        } catch (const Degenerate&) {
        }
    }

    const VerifyOptions vo = verify_options(p);
    report.basin = verify_attractor(k, gens, vo);
    if (!report.basin.all_attracted()) return std::nullopt;

    report.minimality = minimality_check(k, gens, p.epsilon, p.orbit_len, vo);
    report.minimal = report.minimality.minimal;

    report.domain = p.domain ? *p.domain : cube_around(seed_point, 5.0);
    VerifyOptions go = vo;
    go.seed = p.seed ^ kGlobalSeedSalt;
    report.global_evidence = global_check(k, gens, report.domain, go);
    report.global = report.global_evidence.all_attracted();
    return report;
}

}  // namespace

std::optional<AttractorReport> detect_attractor(const GeneratorSet& gens, const DetectParams& params) {
    if (params.domain && params.domain->dim() != gens.dim()) throw DimensionMismatch("detect_attractor: domain dimension mismatch");
    if (gens.rank() == 0) return std::nullopt;

    if (auto cert = contraction_certificate(gens, params.certificate_len, params.tol_cert)) {
        if (auto report = evaluate_candidate(gens, params, cert->fixed_point, cert)) return report;
    }

    // Fallback: fixed points of short words as limit-point candidates.
    std::vector<Point> candidates;
    PointIndex seen(gens.dim(), params.dedup_eps);
    const auto words = enumerate_reduced_words(gens.rank(), params.fallback_len, 1'000'000);
    for (const auto& w : words) {
        if (w.empty()) continue;
        Point v;
        try {
            v = fixed_point(evaluate_word(w, gens));
        } catch (const NonUnique&) {
            continue;
        } catch (const NoFixedPoint&) {
            continue;
        }
        if (!(norm2(v) <= 1e9) || seen.any_within(v, params.dedup_eps)) continue;
        seen.insert(v);
        candidates.push_back(std::move(v));
    }

    LimitPointOptions lo;
    lo.radius = params.limit_radius;
    lo.n_samples = params.limit_samples;
    lo.max_len = params.orbit_len;
    lo.delta = params.limit_delta;
    lo.seed = params.seed;
    lo.min_samples = std::min<std::size_t>(10, params.limit_samples);
    lo.candidate_orbit_len = params.attractor_len;
    lo.dedup_eps = params.dedup_eps;
    lo.node_cap = params.node_cap;
    lo.threads = params.threads;
    for (const auto& v : candidates) {
        LimitPointEvidence ev = detect_local_limit_point(gens, v, lo);
        if (ev.verdict != Verdict::Positive) continue;
        if (auto report = evaluate_candidate(gens, params, v, std::nullopt)) {
            report->limit_point = std::move(ev);
            return report;
        }
    }
    return std::nullopt;
}

}  // namespace attractorlab
