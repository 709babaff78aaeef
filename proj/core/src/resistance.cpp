#include "rwrange/resistance.hpp"

#include <algorithm>
#include <cmath>

#include "rwrange/linsys.hpp"
#include "rwrange/walk.hpp"

namespace rwrange {

namespace {

// series step of the recursion
inline double through(double I) { return I / (1.0 + I); }

} // namespace

double dirichlet_energy(const WeightedGraph& g, std::span<const double> f) {
    RWRANGE_REQUIRE(f.size() == g.vertex_count(), PartialFunction,
                    "potential defined on " + std::to_string(f.size()) + " of " +
                        std::to_string(g.vertex_count()) + " vertices");
    for (double v : f)
        RWRANGE_REQUIRE(std::isfinite(v), PartialFunction, "potential has a non-finite value");
    double energy = 0.0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto ws = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (u < nbrs[i]) {
                const double d = f[u] - f[nbrs[i]];
                energy += d * d * ws[i];
            }
        }
    }
    return energy;
}

double effective_resistance(const WeightedGraph& g, std::span<const VertexId> A,
                            std::span<const VertexId> B) {
    RWRANGE_REQUIRE(!A.empty() && !B.empty(), DisconnectedSets, "A and B must be nonempty");
    std::vector<std::uint8_t> role(g.vertex_count(), 0); // 1 = A, 2 = B
    for (VertexId v : A) {
        g.check_vertex(v);
        role[v] = 1;
    }
    for (VertexId v : B) {
        g.check_vertex(v);
        RWRANGE_REQUIRE(role[v] != 1, DisconnectedSets, "A and B overlap at vertex " +
                                                            std::to_string(v));
        role[v] = 2;
    }

    std::vector<double> f(g.vertex_count(), 0.0);
    for (VertexId v : A) f[v] = 1.0;

    std::vector<VertexId> interior;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (role[v] == 0) interior.push_back(v);

    if (!interior.empty()) {
        KilledLaplacian sys(g, interior);
        std::vector<double> rhs(interior.size(), 0.0);
        for (std::size_t i = 0; i < interior.size(); ++i) {
            const VertexId v = interior[i];
            auto nbrs = g.neighbors(v);
            auto ws = g.neighbor_weights(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k) {
                if (role[nbrs[k]] == 1) rhs[i] += ws[k];
            }
        }
        std::vector<double> sol = sys.solve(rhs);
        for (std::size_t i = 0; i < interior.size(); ++i) f[interior[i]] = sol[i];
    }

    const double energy = dirichlet_energy(g, f);
    RWRANGE_REQUIRE(energy > 0.0, DisconnectedSets, "no current flows between A and B");
    return 1.0 / energy;
}

double rho_n(const WeightedGraph& g, VertexId x, std::uint32_t n) {
    Ball b = ball(g, x, n);
    require_clean_ball(g, x, n);
    RWRANGE_REQUIRE(!b.boundary.empty(), BallCoversGraph,
                    "B(x," + std::to_string(n) + ") covers the graph; enlarge the truncation");

    // Pinning the first exterior shell to 0 is equivalent to pinning all of
    // B(x,n)^c, so the system is restricted to the ball interior.
    std::vector<double> f(g.vertex_count(), 0.0);
    f[x] = 1.0;
    std::vector<VertexId> interior;
    interior.reserve(b.members.size());
    for (VertexId v : b.members)
        if (v != x) interior.push_back(v);
    if (!interior.empty()) {
        KilledLaplacian sys(g, interior);
        std::vector<double> rhs(interior.size(), 0.0);
        for (std::size_t i = 0; i < interior.size(); ++i) {
            rhs[i] = g.edge_weight(interior[i], x);
        }
        std::vector<double> sol = sys.solve(rhs);
        for (std::size_t i = 0; i < interior.size(); ++i) f[interior[i]] = sol[i];
    }
    const double energy = dirichlet_energy(g, f);
    return 1.0 / energy;
}

double green_killed(const WeightedGraph& g, const Ball& b, VertexId x) {
    require_clean_ball(g, x, b.radius);
    RWRANGE_REQUIRE(!b.boundary.empty(), BallCoversGraph, "ball covers the graph");
    KilledLaplacian sys(g, b.members);
    RWRANGE_REQUIRE(sys.contains(x), UnknownVertex, "x outside the ball");
    std::vector<double> rhs(b.members.size(), 0.0);
    rhs[sys.local(x)] = 1.0;
    std::vector<double> u = sys.solve(rhs);
    return u[sys.local(x)];
}

ResistanceProfile rho_profile(const WeightedGraph& g, VertexId x, std::uint32_t n_max) {
    ResistanceProfile profile;
    profile.base = x;
    profile.certified = false;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        profile.rho.push_back(rho_n(g, x, n));
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Explicit-tree recursion
// ---------------------------------------------------------------------------

ExplicitBranchTable::ExplicitBranchTable(const WeightedGraph& tree, VertexId x,
                                         std::uint32_t n_max)
    : tree_(&tree), x_(x), n_max_(n_max), vertex_count_(tree.vertex_count()) {
    RWRANGE_REQUIRE(is_acyclic_tree(tree), NotATree, "branch recursion needs an acyclic tree");
    RWRANGE_REQUIRE(tree.unit_weights(), HypothesisViolated,
                    "branch recursion is stated for unit weights");
    RWRANGE_REQUIRE(n_max >= 1, SpecInvariantViolated, "depth must be >= 1");
    tree.check_vertex(x);
    require_clean_ball(tree, x, n_max);

    // parent-toward-x orientation
    auto dist = bfs_distances(tree, x);
    std::vector<VertexId> parent(vertex_count_, x);
    for (VertexId v = 0; v < vertex_count_; ++v) {
        for (VertexId w : tree.neighbors(v)) {
            if (dist[w] + 1 == dist[v]) parent[v] = w;
        }
    }

    table_.assign(static_cast<std::size_t>(vertex_count_) * (n_max + 1), 0.0);
    auto at = [&](VertexId v, std::uint32_t n) -> double& {
        return table_[static_cast<std::size_t>(v) * (n_max_ + 1) + n];
    };
    for (VertexId v = 0; v < vertex_count_; ++v) {
        const std::uint32_t cc = tree.degree(v) - (v == x ? 0 : 1);
        at(v, 1) = static_cast<double>(cc);
    }
    for (std::uint32_t n = 2; n <= n_max; ++n) {
        for (VertexId v = 0; v < vertex_count_; ++v) {
            double acc = 0.0;
            for (VertexId w : tree.neighbors(v)) {
                if (v != x && w == parent[v]) continue;
                acc += through(at(w, n - 1));
            }
            at(v, n) = acc;
        }
    }
}

double ExplicitBranchTable::value(VertexId y, std::uint32_t n) const {
    RWRANGE_REQUIRE(y < vertex_count_, UnknownVertex, "vertex out of range");
    RWRANGE_REQUIRE(n >= 1 && n <= n_max_, SpecInvariantViolated, "depth out of table range");
    require_clean_ball(*tree_, y, n); // values near a truncation boundary are not exact
    return table_[static_cast<std::size_t>(y) * (n_max_ + 1) + n];
}

double branch_conductance(const WeightedGraph& tree, VertexId x, VertexId y, std::uint32_t n) {
    return ExplicitBranchTable(tree, x, n).value(y, n);
}

// ---------------------------------------------------------------------------
// Layered-tree recursion with rerooting
// ---------------------------------------------------------------------------

LayeredBranchTable::LayeredBranchTable(const LayeredTree& tree, std::uint32_t base_layer,
                                       std::uint32_t n_max)
    : tree_(&tree), base_layer_(base_layer), n_max_(n_max) {
    RWRANGE_REQUIRE(n_max >= 1, SpecInvariantViolated, "depth must be >= 1");
    // deep enough that every exposed (layer <= base + n_max, depth <= n_max)
    // entry has its full recursion chain inside the table
    down_layers_ = base_layer + 2 * n_max + 2;
    down_.assign(static_cast<std::size_t>(down_layers_ + 1) * (n_max + 1), 0.0);
    auto dn = [&](std::uint32_t r, std::uint32_t m) -> double& {
        return down_[static_cast<std::size_t>(r) * (n_max_ + 1) + m];
    };
    for (std::uint32_t r = 1; r <= down_layers_; ++r) dn(r, 1) = tree.child_count(r);
    for (std::uint32_t m = 2; m <= n_max; ++m) {
        for (std::uint32_t r = 1; r + 1 <= down_layers_; ++r) {
            dn(r, m) = tree.child_count(r) * through(dn(r + 1, m - 1));
        }
    }

    if (base_layer >= 1) {
        up_.assign(static_cast<std::size_t>(base_layer + 1) * (n_max + 1), 0.0);
        auto up_at = [&](std::uint32_t j, std::uint32_t m) -> double& {
            return up_[static_cast<std::size_t>(j) * (n_max_ + 1) + m];
        };
        for (std::uint32_t j = 1; j <= base_layer; ++j) up_at(j, 1) = tree.degree(j - 1) - 1;
        for (std::uint32_t m = 2; m <= n_max; ++m) {
            up_at(1, m) = (tree.degree(0) - 1) * through(dn(1, m - 1));
            for (std::uint32_t j = 2; j <= base_layer; ++j) {
                up_at(j, m) = (tree.child_count(j - 1) - 1) * through(dn(j, m - 1)) +
                              through(up_at(j - 1, m - 1));
            }
        }
    }
}

double LayeredBranchTable::down(std::uint32_t layer, std::uint32_t depth) const {
    RWRANGE_REQUIRE(layer >= 1 && layer <= down_layer_max(), SpecInvariantViolated,
                    "layer out of table range");
    RWRANGE_REQUIRE(depth >= 1 && depth <= n_max_, SpecInvariantViolated,
                    "depth out of table range");
    return down_[static_cast<std::size_t>(layer) * (n_max_ + 1) + depth];
}

double LayeredBranchTable::up(std::uint32_t layer, std::uint32_t depth) const {
    RWRANGE_REQUIRE(layer >= 1 && layer <= base_layer_, SpecInvariantViolated,
                    "up table defined for layers 1..base");
    RWRANGE_REQUIRE(depth >= 1 && depth <= n_max_, SpecInvariantViolated,
                    "depth out of table range");
    return up_[static_cast<std::size_t>(layer) * (n_max_ + 1) + depth];
}

double LayeredBranchTable::inverse_rho(std::uint32_t depth) const {
    RWRANGE_REQUIRE(depth >= 1 && depth <= n_max_, SpecInvariantViolated,
                    "depth out of table range");
    const std::uint32_t deg = tree_->degree(base_layer_);
    if (depth == 1) return deg;
    if (base_layer_ == 0) return deg * through(down(1, depth - 1));
    return (deg - 1) * through(down(base_layer_ + 1, depth - 1)) +
           through(up(base_layer_, depth - 1));
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

void DegreeBand::validate() const {
    RWRANGE_REQUIRE(n1 >= 3, HypothesisViolated, "band needs N1 >= 3");
    RWRANGE_REQUIRE(n1 <= n2, HypothesisViolated, "band needs N1 <= N2");
    RWRANGE_REQUIRE(n2 < (n1 - 1) * (n1 - 1), HypothesisViolated,
                    "band needs N2 < (N1-1)^2 for geometric convergence");
}

double inverse_gap_bound(DegreeBand band, std::uint32_t n) {
    band.validate();
    RWRANGE_REQUIRE(n >= 1, SpecInvariantViolated, "n must be >= 1");
    return std::pow(band.contraction(), static_cast<double>(n - 1)) * band.n2;
}

double enclosure_width_bound(DegreeBand band, std::uint32_t n) {
    const double denom = (band.n1 - 2.0) * (band.n1 - 2.0);
    return inverse_gap_bound(band, n) / denom;
}

namespace {

DegreeBand resolve_band(const LayeredTree& tree, std::optional<DegreeBand> band) {
    DegreeBand b = band.value_or(DegreeBand{tree.min_degree(), tree.max_degree()});
    b.validate();
    RWRANGE_REQUIRE(b.n1 <= tree.min_degree() && tree.max_degree() <= b.n2, HypothesisViolated,
                    "tree degrees fall outside the certification band");
    return b;
}

} // namespace

ResistanceEnclosure certify_rho(const LayeredTree& tree, std::uint32_t layer, std::uint32_t n,
                                std::optional<DegreeBand> band) {
    const DegreeBand b = resolve_band(tree, band);
    LayeredBranchTable table(tree, layer, n);
    ResistanceEnclosure enc;
    enc.band = b;
    enc.n_used = n;
    enc.lo = 1.0 / table.inverse_rho(n);
    enc.hi = enc.lo + enclosure_width_bound(b, n);
    return enc;
}

ResistanceProfile certified_profile(const LayeredTree& tree, std::uint32_t layer,
                                    std::uint32_t n_max, std::optional<DegreeBand> band) {
    const DegreeBand b = resolve_band(tree, band);
    LayeredBranchTable table(tree, layer, n_max);
    ResistanceProfile profile;
    profile.base = layer;
    profile.certified = true;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        const double rho = 1.0 / table.inverse_rho(n);
        profile.rho.push_back(rho);
        profile.lo.push_back(rho);
        profile.hi.push_back(rho + enclosure_width_bound(b, n));
    }
    return profile;
}

EscapeProbability escape_probability(const LayeredTree& tree, std::uint32_t layer,
                                     std::uint32_t n, std::optional<DegreeBand> band) {
    const ResistanceEnclosure enc = certify_rho(tree, layer, n, band);
    const double mu = tree.degree(layer);
    EscapeProbability esc;
    esc.certified = true;
    esc.rho_lower_bound = enc.lo;
    esc.interval = {1.0 / (mu * enc.hi), 1.0 / (mu * enc.lo)};
    return esc;
}

EscapeProbability escape_probability(const WeightedGraph& g, VertexId x, std::uint32_t n_max) {
    const double rho = rho_n(g, x, n_max);
    EscapeProbability esc;
    esc.certified = false;
    esc.rho_lower_bound = rho;
    esc.interval = {0.0, 1.0 / (g.vertex_weight(x) * rho)};
    return esc;
}

} // namespace rwrange
