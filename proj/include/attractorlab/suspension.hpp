#pragma once

// Suspended foliations Sus(T, B, rho) with transversal T = R^q. The foliated
// manifold is kept symbolic (base descriptor plus representation); everything
// computable lives on the transversal, where leaves are orbits of the global
// holonomy group.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attractorlab/affine.hpp"
#include "attractorlab/dynamics.hpp"
#include "attractorlab/word.hpp"

namespace attractorlab {

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    std::size_t rank() const { return generators.size(); }
};

/// Closed orientable surface of genus m: generators a_i, b_i for
/// i = first_index .. first_index + m - 1 and the single relator
/// a b a^-1 b^-1 ... over all pairs. m = 0 gives the empty presentation.
Presentation surface_presentation(std::size_t m, std::size_t first_index = 1);

/// Free group on g1 .. g_rank. Throws InvalidArgument for rank 0.
Presentation free_presentation(std::size_t rank);

struct Representation {
    Presentation presentation;
    std::size_t dim = 0;
    /// Image of each presentation generator, in presentation order.
    std::vector<AffineMap> images;
    /// Largest entrywise deviation from the identity over all relators.
    double max_relator_residual = 0.0;

    const AffineMap& image(const std::string& generator) const;
};

/// Validates that every generator is assigned, that dimensions agree, and that
/// every relator evaluates to the identity within `tol` entrywise. Throws
/// InvalidArgument, DimensionMismatch or RelatorViolated.
Representation build_representation(const Presentation& p, const std::map<std::string, AffineMap>& assignment,
                                    double tol = 1e-9);

struct BaseDescriptor {
    enum class Kind { Surface, Free };
    Kind kind = Kind::Free;
    /// Genus for Surface, rank for Free.
    std::size_t count = 0;

    /// "surface m" or "free r".
    std::string to_string() const;
    static BaseDescriptor parse(const std::string& text);

    friend bool operator==(const BaseDescriptor&, const BaseDescriptor&) = default;
};

struct SuspendedFoliation {
    Representation representation;
    BaseDescriptor base;
    std::size_t transversal_dim = 0;
    std::size_t codimension = 0;
    /// Generators kept from a countable family; equals the rank for finite bases.
    std::size_t truncation_rank = 0;
    /// Global holonomy group: distinct non-identity images, in presentation order.
    GeneratorSet holonomy;

    /// "Sus(R^q, <base>, rho)".
    std::string label() const;
};

SuspendedFoliation suspend(const Representation& rep, const BaseDescriptor& base);

enum class LeafTag { Periodic, ClosedDiscrete, Accumulating };

std::string to_string(LeafTag t);

struct AccumulationWitness {
    Point at;
    /// Distinct orbit points found within 10 * dedup_eps of `at`.
    std::size_t nearby = 0;
};

struct LeafClass {
    LeafTag tag = LeafTag::ClosedDiscrete;
    std::size_t orbit_size = 0;
    /// The base point is itself approached by distinct orbit points.
    bool non_proper = false;
    /// First few witnesses; witness_count has the total found.
    std::vector<AccumulationWitness> witnesses;
    std::size_t witness_count = 0;
    /// The word budget or point cap ran out before a clean verdict.
    bool inconclusive = false;
};

/// Classifies the leaf through transversal point t by the behaviour of its
/// holonomy orbit within the word budget.
LeafClass classify_leaf(const SuspendedFoliation& fol, std::span<const double> t, std::size_t budget = 60,
                        double dedup_eps = 1e-4, std::size_t point_cap = 1'000'000);

struct FoliationAttractor {
    AttractorReport transversal;
    /// Formal record of the lift, "M = kappa(r^-1(K))", with the foliation label.
    std::string lift;
    std::string foliation;
    bool global = false;
    bool minimal = false;
    /// K fills the whole transversal (fitted dimension equals q).
    bool whole_transversal = false;
};

/// Wraps a group attractor of the holonomy group as the foliation attractor.
/// Throws MismatchedGroup when the report came from a different group.
FoliationAttractor lift_attractor(const SuspendedFoliation& fol, const AttractorReport& report);

}  // namespace attractorlab
