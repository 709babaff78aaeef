#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rwrange/graph.hpp"
#include "rwrange/rng.hpp"

namespace rwrange::testing {

inline bool close_rel(double a, double b, double tol = 1e-10) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    return std::fabs(a - b) <= tol * scale;
}

/// Random unit-weight tree by uniform attachment.
inline WeightedGraph random_tree(std::uint32_t vertices, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<Edge> edges;
    for (std::uint32_t v = 1; v < vertices; ++v) {
        edges.push_back({rng.bounded(v), v, 1.0});
    }
    return WeightedGraph::build_explicit(edges);
}

/// Random connected unit-weight graph: random tree plus extra edges.
inline WeightedGraph random_connected_graph(std::uint32_t vertices, std::uint32_t extra_edges,
                                            std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> present(vertices, std::vector<bool>(vertices, false));
    for (std::uint32_t v = 1; v < vertices; ++v) {
        const VertexId p = rng.bounded(v);
        edges.push_back({p, v, 1.0});
        present[p][v] = present[v][p] = true;
    }
    std::uint32_t added = 0;
    std::uint32_t guard = 0;
    while (added < extra_edges && ++guard < 100 * extra_edges + 100) {
        const VertexId a = rng.bounded(vertices);
        const VertexId b = rng.bounded(vertices);
        if (a == b || present[a][b]) continue;
        present[a][b] = present[b][a] = true;
        edges.push_back({a, b, 1.0});
        ++added;
    }
    return WeightedGraph::build_explicit(edges);
}

inline WeightedGraph path_graph(std::uint32_t vertices) {
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v + 1 < vertices; ++v) edges.push_back({v, v + 1, 1.0});
    return WeightedGraph::build_explicit(edges);
}

inline WeightedGraph cycle_graph(std::uint32_t vertices) {
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v + 1 < vertices; ++v) edges.push_back({v, v + 1, 1.0});
    edges.push_back({vertices - 1, 0, 1.0});
    return WeightedGraph::build_explicit(edges);
}

inline WeightedGraph star_graph(std::uint32_t leaves) {
    std::vector<Edge> edges;
    for (std::uint32_t v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
    return WeightedGraph::build_explicit(edges);
}

} // namespace rwrange::testing
