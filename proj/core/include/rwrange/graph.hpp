#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rwrange/errors.hpp"

namespace rwrange {

using VertexId = std::uint32_t;

struct Edge {
    VertexId u{0};
    VertexId v{0};
    double weight{1.0};
};

/// Finite weighted graph with symmetric positive conductances.
///
/// Immutable after construction; adjacency is stored CSR-style with
/// neighbor lists sorted by vertex id, so all queries are deterministic
/// and safe to call concurrently.
class WeightedGraph {
public:
    /// Builds the graph from an undirected edge list. Each unordered pair
    /// may appear once; the symmetric closure is stored internally.
    /// Throws SelfLoop, DuplicateEdge, NonPositiveWeight, Disconnected.
    static WeightedGraph build_explicit(const std::vector<Edge>& edges);

    std::uint32_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t edge_count() const noexcept { return weights_.size() / 2; }

    std::uint32_t degree(VertexId x) const {
        check_vertex(x);
        return offsets_[x + 1] - offsets_[x];
    }

    /// mu_x: total conductance at x.
    double vertex_weight(VertexId x) const {
        check_vertex(x);
        return vertex_weights_[x];
    }

    /// mu(A) for a vertex set A.
    double set_weight(std::span<const VertexId> vertices) const;

    std::span<const VertexId> neighbors(VertexId x) const {
        check_vertex(x);
        return {neighbor_ids_.data() + offsets_[x], neighbor_ids_.data() + offsets_[x + 1]};
    }
    std::span<const double> neighbor_weights(VertexId x) const {
        check_vertex(x);
        return {weights_.data() + offsets_[x], weights_.data() + offsets_[x + 1]};
    }

    /// Conductance of {x,y}; 0 when not adjacent.
    double edge_weight(VertexId x, VertexId y) const;

    std::uint32_t max_degree() const noexcept { return max_degree_; }
    double min_edge_weight() const noexcept { return w_min_; }
    double max_edge_weight() const noexcept { return w_max_; }
    bool unit_weights() const noexcept { return w_min_ == 1.0 && w_max_ == 1.0; }

    /// Vertices whose neighbor lists are incomplete because the graph is a
    /// truncation of an infinite object. Empty for genuinely finite graphs.
    std::span<const VertexId> artificial_boundary() const { return artificial_; }
    bool is_artificial(VertexId x) const {
        check_vertex(x);
        return !artificial_mask_.empty() && artificial_mask_[x] != 0;
    }
    void mark_artificial(std::vector<VertexId> boundary);

    void check_vertex(VertexId x) const {
        RWRANGE_REQUIRE(x < vertex_count_, UnknownVertex,
                        "vertex " + std::to_string(x) + " out of range");
    }

private:
    std::uint32_t vertex_count_{0};
    std::vector<std::uint32_t> offsets_;
    std::vector<VertexId> neighbor_ids_;
    std::vector<double> weights_;
    std::vector<double> vertex_weights_;
    std::uint32_t max_degree_{0};
    double w_min_{0.0};
    double w_max_{0.0};
    std::vector<VertexId> artificial_;
    std::vector<std::uint8_t> artificial_mask_;
};

/// Metric ball B(x,n) = {y : d(x,y) < n} with the strict-inequality
/// convention, plus the first exterior shell {y : d(x,y) = n}.
struct Ball {
    VertexId center{0};
    std::uint32_t radius{0};
    std::vector<VertexId> members;        // BFS order, distance < radius
    std::vector<std::uint32_t> distances; // distance of members[i] from center
    std::vector<VertexId> boundary;       // distance == radius, inside the built graph
};

/// BFS distances from x over the whole graph (edges all count length 1).
std::vector<std::uint32_t> bfs_distances(const WeightedGraph& g, VertexId x);

/// B(x,n); requires n >= 1. B(x,1) = {x}.
Ball ball(const WeightedGraph& g, VertexId x, std::uint32_t n);

/// V(x,n) = mu(B(x,n)).
double volume(const WeightedGraph& g, VertexId x, std::uint32_t n);

bool is_connected(const WeightedGraph& g);
bool is_acyclic_tree(const WeightedGraph& g);
bool is_bipartite(const WeightedGraph& g);

/// Edge-list text interchange: one "u v w" triple per line, '#' comments.
std::string write_edge_list(const WeightedGraph& g);
WeightedGraph read_edge_list(std::istream& in);
WeightedGraph read_edge_list_file(const std::string& path);

} // namespace rwrange
