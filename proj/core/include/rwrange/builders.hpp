#pragma once

#include <cstdint>

#include "rwrange/graph.hpp"
#include "rwrange/trees.hpp"

namespace rwrange {

inline constexpr std::uint64_t kDefaultVertexBudget = 5'000'000;

/// Unit-weight nearest-neighbor graph on {0..side-1}^dim, dim in {1,2,3}.
WeightedGraph lattice_box(std::uint32_t dim, std::uint32_t side,
                          std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Implicit layered tree plus an explicit truncation to the given radius.
struct TreeFamily {
    LayeredTree spec;
    TreeTruncation truncation;
};

/// Infinite N-regular tree T_N, truncated at `depth` (layers 0..depth).
TreeFamily regular_tree(std::uint32_t N, std::uint32_t depth,
                        std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Root-pruned tree: deg(root) = N-1 and N elsewhere, truncated at `depth`.
TreeFamily pruned_tree(std::uint32_t N, std::uint32_t depth,
                       std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Y_N of a finite core tree: each leaf is identified with the root of a
/// fresh pruned tree so the merged vertex has degree N.
AttachedTree attach_trees(WeightedGraph core, VertexId root, std::uint32_t N);

/// Banded-degree tree of the alternating construction.
LayeredTree alternating_tree(const AlternatingTreeSpec& spec);

/// Two-dimensional graphical Sierpinski gasket at the given level.
WeightedGraph sierpinski_gasket(std::uint32_t level,
                                std::uint64_t vertex_budget = kDefaultVertexBudget);

/// Vicsek fractal tree (recursive plus shape) at the given level.
WeightedGraph vicsek_tree(std::uint32_t level,
                          std::uint64_t vertex_budget = kDefaultVertexBudget);

} // namespace rwrange
