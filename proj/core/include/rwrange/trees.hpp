#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwrange/graph.hpp"

namespace rwrange {

/// Path from the root as a sequence of child indices. Children are indexed
/// 0..child_count-1; the parent edge is not a child slot. Addresses give
/// lazy vertex identity on implicit infinite trees.
using TreeAddress = std::vector<std::uint32_t>;

/// Parameters of the alternating-band tree: degree n1 on layers
/// [k_{2j}, k_{2j+1}) and n2 on layers [k_{2j+1}, k_{2j+2}) with k_0 = 0;
/// the last radius extends its band to infinity.
struct AlternatingTreeSpec {
    std::uint32_t n1{0};
    std::uint32_t n2{0};
    std::vector<std::uint32_t> radii; // k_1 < k_2 < ..., each k_{i+1} > 2 k_i

    /// Requires 3 <= n1 < n2 < (n1-1)^2 and the radius growth rule.
    void validate() const;
};

/// Infinite tree whose vertex degree depends only on the distance from the
/// root. Covers regular trees, root-pruned trees and alternating-band trees.
/// Immutable value type; all queries are pure.
class LayeredTree {
public:
    using State = std::uint32_t; // distance from the root

    static LayeredTree regular(std::uint32_t N);
    static LayeredTree pruned(std::uint32_t N); // deg(root)=N-1, deg(x)=N elsewhere
    static LayeredTree alternating(const AlternatingTreeSpec& spec);

    std::uint32_t degree(std::uint32_t layer) const;
    std::uint32_t child_count(std::uint32_t layer) const {
        return layer == 0 ? degree(0) : degree(layer) - 1;
    }
    std::uint32_t root_degree() const { return degree(0); }

    /// Degree range over all layers (the band used by certification).
    std::uint32_t min_degree() const { return min_degree_; }
    std::uint32_t max_degree() const { return max_degree_; }

    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& bands() const { return bands_; }
    const std::string& label() const { return label_; }

    // TreeModel interface used by walks and truncation.
    State root() const { return 0; }
    std::uint32_t child_count_state(State s) const { return child_count(s); }
    State child_state(State s, std::uint32_t) const { return s + 1; }
    std::uint32_t depth(State s) const { return s; }

    std::uint32_t layer_of_address(const TreeAddress& addr) const;

private:
    LayeredTree(std::vector<std::pair<std::uint32_t, std::uint32_t>> bands, std::string label);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> bands_; // (start layer, degree)
    std::uint32_t min_degree_{0};
    std::uint32_t max_degree_{0};
    std::string label_;
};

/// Infinite tree Y_N: a finite core tree whose every leaf is identified
/// with the root of a fresh pruned tree (root degree N-1), so merged
/// vertices have degree 1 + (N-1) = N.
class AttachedTree {
public:
    struct State {
        std::uint32_t depth{0};
        VertexId core_vertex{0};   // valid while in the core
        VertexId core_parent{0};   // parent in the core; == core_vertex at the root
        bool in_tail{false};       // beyond a core leaf
    };

    /// core must be an acyclic connected unit-weight graph with at least one
    /// internal vertex, every internal vertex of degree >= 3 (NotATree /
    /// LowInternalDegree otherwise); N >= 3.
    AttachedTree(WeightedGraph core, VertexId root, std::uint32_t N);

    const WeightedGraph& core() const { return core_; }
    VertexId core_root() const { return root_; }
    std::uint32_t attached_degree() const { return big_n_; }
    std::uint32_t max_degree() const;
    const std::string& label() const { return label_; }

    State root() const { return State{0, root_, root_, false}; }
    std::uint32_t child_count_state(const State& s) const;
    State child_state(const State& s, std::uint32_t idx) const;
    std::uint32_t depth(const State& s) const { return s.depth; }

private:
    WeightedGraph core_;
    VertexId root_;
    std::uint32_t big_n_;
    std::string label_;
};

/// Explicit materialization of an implicit tree out to a given radius.
/// Vertices at distance exactly `radius` are flagged as artificial
/// boundary: their true neighbor lists are incomplete.
struct TreeTruncation {
    WeightedGraph graph;
    VertexId root{0};
    std::uint32_t radius{0};
    std::vector<std::uint32_t> layer_of; // distance from root per vertex
};

TreeTruncation truncate_tree(const LayeredTree& tree, std::uint32_t radius,
                             std::uint64_t vertex_budget = 5'000'000);
TreeTruncation truncate_tree(const AttachedTree& tree, std::uint32_t radius,
                             std::uint64_t vertex_budget = 5'000'000);

} // namespace rwrange
