#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rwrange/graph.hpp"
#include "rwrange/stats.hpp"
#include "rwrange/trees.hpp"

namespace rwrange {

/// Dirichlet energy (1/2) sum_{x~y} (f(x)-f(y))^2 mu_xy; f must assign a
/// finite value to every vertex.
double dirichlet_energy(const WeightedGraph& g, std::span<const double> f);

/// Effective resistance between disjoint nonempty vertex sets: reciprocal of
/// the minimal Dirichlet energy among potentials pinned to 1 on A, 0 on B.
/// Solved via the harmonic system (conjugate gradients); the energy of the
/// harmonic minimizer is quadratic around the optimum, so the returned value
/// is accurate to machine precision for well-conditioned instances.
double effective_resistance(const WeightedGraph& g, std::span<const VertexId> A,
                            std::span<const VertexId> B);

/// rho(x,n) = R_eff({x}, B(x,n)^c). rho(x,1) = 1/mu_x exactly.
double rho_n(const WeightedGraph& g, VertexId x, std::uint32_t n);

/// Green function of the walk killed outside the ball, evaluated on the
/// diagonal: g^B(x,x). Equals rho(x, ball.radius) by the killed-Green
/// identity; computed through an independent linear system (point source
/// rather than pinned potential).
double green_killed(const WeightedGraph& g, const Ball& b, VertexId x);

struct ResistanceProfile {
    std::uint32_t base{0}; // vertex id (explicit) or layer (layered tree)
    std::vector<double> rho; // rho[i] = rho(x, i+1)
    std::vector<double> lo;  // certified enclosures, empty when uncertified
    std::vector<double> hi;
    bool certified{false};
};

ResistanceProfile rho_profile(const WeightedGraph& g, VertexId x, std::uint32_t n_max);

// ---------------------------------------------------------------------------
// Tree recursion: I_x(y,n) branch conductances
// ---------------------------------------------------------------------------

/// I_x(y,n) tables on an explicit finite unit-weight tree; the recursion
/// I_x(y, n+1) = sum_i I_x(y_i, n)/(1 + I_x(y_i, n)) over the children of y
/// away from x, with I_x(y, 1) = #children. Branches shallower than the
/// depth contribute I = 0, matching resistance within the finite tree.
class ExplicitBranchTable {
public:
    ExplicitBranchTable(const WeightedGraph& tree, VertexId x, std::uint32_t n_max);

    double value(VertexId y, std::uint32_t n) const;
    std::uint32_t depth_max() const { return n_max_; }
    VertexId base() const { return x_; }

private:
    const WeightedGraph* tree_;
    VertexId x_;
    std::uint32_t n_max_;
    std::uint32_t vertex_count_;
    std::vector<double> table_; // [v * (n_max+1) + n]
};

/// I_x(y,n) on an explicit tree (convenience wrapper; y = x gives
/// rho(x,n)^{-1}).
double branch_conductance(const WeightedGraph& tree, VertexId x, VertexId y, std::uint32_t n);

/// Branch tables on a layered tree for a base vertex at a given layer,
/// memoized on (layer, depth). Off-root bases combine the downward tables
/// with one upward pass along the root path, so cost is O((layer+n) * n).
class LayeredBranchTable {
public:
    LayeredBranchTable(const LayeredTree& tree, std::uint32_t base_layer, std::uint32_t n_max);

    /// I of a downward branch rooted at `layer`, truncated at `depth`.
    double down(std::uint32_t layer, std::uint32_t depth) const;
    /// I of the parent-side branch seen from a vertex at `layer` >= 1.
    double up(std::uint32_t layer, std::uint32_t depth) const;
    /// I_x(x, depth) = rho(x, depth)^{-1} for the base vertex.
    double inverse_rho(std::uint32_t depth) const;

    std::uint32_t base_layer() const { return base_layer_; }
    std::uint32_t depth_max() const { return n_max_; }
    std::uint32_t down_layer_max() const { return base_layer_ + n_max_; }

private:
    const LayeredTree* tree_;
    std::uint32_t base_layer_;
    std::uint32_t n_max_;
    std::uint32_t down_layers_;
    std::vector<double> down_; // [layer * (n_max+1) + depth], layer in [1, down_layer_max]
    std::vector<double> up_;   // [layer * (n_max+1) + depth], layer in [1, base_layer]
};

// ---------------------------------------------------------------------------
// Certified enclosures (banded-degree trees)
// ---------------------------------------------------------------------------

/// Degree band [n1, n2] for the geometric-convergence certificate. The
/// contraction requires 3 <= n1 <= n2 < (n1-1)^2; a degenerate band n1 = n2
/// covers regular trees.
struct DegreeBand {
    std::uint32_t n1{0};
    std::uint32_t n2{0};

    void validate() const;
    double contraction() const { return static_cast<double>(n2) / ((n1 - 1.0) * (n1 - 1.0)); }
};

/// (N2/(N1-1)^2)^{n-1} * N2: bound on rho(x,n)^{-1} - rho(x)^{-1}.
double inverse_gap_bound(DegreeBand band, std::uint32_t n);
/// inverse_gap_bound / (N1-2)^2: bound on rho(x) - rho(x,n).
double enclosure_width_bound(DegreeBand band, std::uint32_t n);

struct ResistanceEnclosure {
    double lo{0.0}; // rho(x, n_used), monotone lower bound for rho(x)
    double hi{0.0}; // lo + enclosure_width_bound(band, n_used)
    std::uint32_t n_used{0};
    DegreeBand band;

    double width() const { return hi - lo; }
};

/// Certified enclosure of rho(x) for a vertex at `layer` of a layered tree
/// whose degrees all lie in `band` (defaults to the tree's degree range).
/// Throws HypothesisViolated when the contraction hypothesis fails.
ResistanceEnclosure certify_rho(const LayeredTree& tree, std::uint32_t layer, std::uint32_t n,
                                std::optional<DegreeBand> band = std::nullopt);

/// Profile with certified enclosures for n = 1..n_max (one shared table).
ResistanceProfile certified_profile(const LayeredTree& tree, std::uint32_t layer,
                                    std::uint32_t n_max,
                                    std::optional<DegreeBand> band = std::nullopt);

struct EscapeProbability {
    Interval interval;         // bounds for P_x(T_x^+ = inf)
    bool certified{false};
    double rho_lower_bound{0}; // monotone lower bound on rho(x) backing it
};

/// Certified escape interval [1/(mu hi), 1/(mu lo)] from the enclosure.
EscapeProbability escape_probability(const LayeredTree& tree, std::uint32_t layer,
                                     std::uint32_t n,
                                     std::optional<DegreeBand> band = std::nullopt);

/// Uncertified variant for explicit graphs: only the monotone resistance
/// lower bound is available, so the interval is [0, 1/(mu_x rho(x,n_max))].
EscapeProbability escape_probability(const WeightedGraph& g, VertexId x, std::uint32_t n_max);

} // namespace rwrange
