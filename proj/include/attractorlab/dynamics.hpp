#pragma once

// Group-level attractor machinery for finitely generated subgroups of
// Aff(R^q): contraction certificates, limit-point probes, basin/minimality/
// global evidence and the detection pipeline that assembles them.
//
// All evidence is witness-based: an orbit point counts only if it was produced
// by applying an explicit group word to the sample, so a positive verdict is
// never an artefact of the search heuristics. Negative verdicts are bounded by
// the word budget and say so.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attractorlab/affine.hpp"
#include "attractorlab/geometry.hpp"
#include "attractorlab/orbit.hpp"

namespace attractorlab {

enum class CertificateKind { OperatorNorm, SpectralRadius };

std::string to_string(CertificateKind k);

/// A group word whose linear part contracts, with the unique fixed point of
/// the word's map.
struct Certificate {
    Word word;
    CertificateKind kind = CertificateKind::OperatorNorm;
    double value = 0.0;
    Point fixed_point;
};

/// Shortest (then lexicographically least) word of length 1..max_len whose
/// linear part has operator norm < 1 - tol_cert, or failing that spectral
/// radius < 1 - tol_cert. Returns nullopt if none qualifies. Throws
/// BudgetExceeded when the search would examine more than word_cap words.
std::optional<Certificate> contraction_certificate(const GeneratorSet& gens, std::size_t max_len, double tol_cert,
                                                   std::size_t word_cap = 10'000'000);

/// Smallest k >= 1 with ||A^k|| < 1 - tol for the certificate word's linear part
/// (1 for norm-route certificates).
int contracting_power(const Certificate& cert, const GeneratorSet& gens, double tol);

enum class Verdict { Positive, Negative, Inconclusive };

std::string to_string(Verdict v);

struct ProbeOutcome {
    Point sample;
    bool attracted = false;
    bool exhausted = false;  // miss is definitive within the word budget
    double closest = 0.0;
    std::size_t word_length = 0;
    bool explicit_probe = false;
};

struct LimitPointEvidence {
    Point candidate;
    double neighborhood_radius = 0.0;
    std::size_t samples_tested = 0;
    std::size_t samples_attracted = 0;
    double delta = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t seed = 0;
    std::size_t rejected = 0;
    std::vector<ProbeOutcome> samples;
};

struct LimitPointOptions {
    double radius = 1.0;
    std::size_t n_samples = 20;
    std::size_t max_len = 60;
    double delta = 0.01;
    std::uint64_t seed = 0;
    std::size_t min_samples = 10;
    /// Extra sample points tested before the random ones.
    std::vector<Point> probes;
    /// Word budget for the candidate's own orbit used to exclude samples.
    std::size_t candidate_orbit_len = 8;
    double dedup_eps = 1e-4;
    std::size_t node_cap = 20'000;
    unsigned threads = 1;
};

/// Probes whether `candidate` is a local limit point: every sampled orbit in
/// the radius-ball must enter the delta-ball of the candidate. Positive iff
/// all tested samples are attracted and at least min_samples were tested;
/// Negative when some sample provably misses within the word budget.
LimitPointEvidence detect_local_limit_point(const GeneratorSet& gens, std::span<const double> candidate,
                                            const LimitPointOptions& opts);

/// Finite description of a candidate attractor K.
struct AttractorSet {
    std::vector<Point> points;
    /// Provenance words from `base` (parallel to `points`), or empty if unknown.
    std::vector<Word> words;
    std::optional<Point> base;
    /// Contracting word whose fixed point is `base`; used to route orbits to K.
    std::optional<Certificate> hub;
    std::optional<AffineSubspace> subspace;
    /// Region of K whose eps-net must be approached; the whole sample if unset.
    std::optional<Box> window;

    /// Distance to K: to the fitted subspace when present, else to the sample.
    double distance_to(std::span<const double> p) const;
};

struct BasinSample {
    Point sample;
    /// Closest approach to K found along the routing path, and the word length
    /// at which it was first achieved (stops at approach_tol).
    double min_distance = 0.0;
    std::size_t word_length = 0;
    /// Largest, over the eps-net of K, of the closest approach to that net point.
    double worst_gap = 0.0;
    bool attracted = false;
    bool explicit_probe = false;
};

struct BasinEvidence {
    std::vector<BasinSample> samples;
    std::size_t rejected = 0;  // draws that fell inside K's eps-thickening
    std::size_t net_size = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    std::size_t attracted_count() const;
    bool all_attracted() const { return attracted_count() == samples.size(); }
    /// Every draw fell inside K's thickening (K is eps-dense where sampled).
    bool vacuous() const { return samples.empty(); }
};

struct VerifyOptions {
    double neighborhood_radius = 1.0;
    std::size_t n_samples = 100;
    std::size_t max_len = 60;
    double epsilon = 0.05;
    double approach_tol = 1e-6;
    std::uint64_t seed = 0;
    double dedup_eps = 1e-4;
    /// Budget for the hub orbit when K carries a hub but no provenance words.
    std::size_t hub_orbit_len = 8;
    std::size_t node_cap = 20'000;
    unsigned threads = 1;
    std::vector<Point> probes;
};

/// Samples the radius-neighbourhood of K (outside its eps-thickening) and
/// checks that each orbit comes eps-close to every point of an eps-net of K.
BasinEvidence verify_attractor(const AttractorSet& k, const GeneratorSet& gens, const VerifyOptions& opts);

/// verify_attractor semantics with samples drawn uniformly from `domain`.
BasinEvidence global_check(const AttractorSet& k, const GeneratorSet& gens, const Box& domain, const VerifyOptions& opts);

struct MinimalityEvidence {
    bool minimal = false;
    std::size_t net_size = 0;
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
    double worst_gap = 0.0;
    /// First few (from, to) net index pairs that were not connected.
    std::vector<std::pair<std::size_t, std::size_t>> failed_pairs;
};

/// For each net point z of K, the orbit of z must come eps-close to every
/// other net point.
MinimalityEvidence minimality_check(const AttractorSet& k, const GeneratorSet& gens, double epsilon, std::size_t max_len,
                                    const VerifyOptions& opts = {});

struct DetectParams {
    std::size_t certificate_len = 12;
    double tol_cert = 1e-6;
    std::size_t attractor_len = 8;
    std::size_t orbit_len = 60;
    double dedup_eps = 1e-4;
    double epsilon = 0.05;
    double approach_tol = 1e-6;
    double neighborhood_radius = 1.0;
    double net_radius = 2.0;
    std::size_t n_samples = 100;
    std::uint64_t seed = 0;
    /// Sampling box for the global check; default is the cube of half-width 5
    /// around K's base point.
    std::optional<Box> domain;
    double residual_tol = 1e-6;
    std::size_t point_cap = 1'000'000;
    std::size_t fallback_len = 3;
    double limit_radius = 1.0;
    double limit_delta = 0.01;
    std::size_t limit_samples = 20;
    std::size_t node_cap = 20'000;
    unsigned threads = 1;

    friend bool operator==(const DetectParams&, const DetectParams&) = default;
};

struct AttractorReport {
    AttractorSet attractor;
    std::optional<Certificate> certificate;
    std::optional<LimitPointEvidence> limit_point;
    BasinEvidence basin;
    MinimalityEvidence minimality;
    bool minimal = false;
    BasinEvidence global_evidence;
    bool global = false;
    Box domain;
    bool sample_invariant = false;
    std::uint64_t generator_fingerprint = 0;
    /// The basin is sampled in a metric neighbourhood of K, not in an invariant
    /// open set; this records that gap.
    std::string neighborhood_note;
};

/// Certificate route first: the shortest contracting word's fixed point seeds
/// K (its orbit sample), which is then verified, checked for minimality and
/// globality. Without a certificate, fixed points of short words are probed
/// as local limit points. Returns nullopt when every candidate fails; that is
/// an absence of evidence, not a proof that no attractor exists.
std::optional<AttractorReport> detect_attractor(const GeneratorSet& gens, const DetectParams& params);

}  // namespace attractorlab
