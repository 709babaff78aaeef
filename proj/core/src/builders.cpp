#include "rwrange/builders.hpp"

#include <cstdint>
#include <unordered_map>

namespace rwrange {

WeightedGraph lattice_box(std::uint32_t dim, std::uint32_t side, std::uint64_t vertex_budget) {
    RWRANGE_REQUIRE(dim >= 1 && dim <= 3, SpecInvariantViolated, "lattice dim must be 1, 2 or 3");
    RWRANGE_REQUIRE(side >= 2, SpecInvariantViolated, "lattice side must be >= 2");
    std::uint64_t count = 1;
    for (std::uint32_t k = 0; k < dim; ++k) count *= side;
    RWRANGE_REQUIRE(count <= vertex_budget, SizeOverflow,
                    "lattice box has " + std::to_string(count) + " vertices");

    // Vertex id = x + side*y + side^2*z.
    std::uint64_t stride[3] = {1, side, static_cast<std::uint64_t>(side) * side};
    std::vector<Edge> edges;
    for (std::uint64_t v = 0; v < count; ++v) {
        std::uint64_t coord[3] = {v % side, (v / side) % side, v / (stride[2])};
        for (std::uint32_t k = 0; k < dim; ++k) {
            if (coord[k] + 1 < side) {
                edges.push_back({static_cast<VertexId>(v),
                                 static_cast<VertexId>(v + stride[k]), 1.0});
            }
        }
    }
    return WeightedGraph::build_explicit(edges);
}

TreeFamily regular_tree(std::uint32_t N, std::uint32_t depth, std::uint64_t vertex_budget) {
    LayeredTree spec = LayeredTree::regular(N);
    return {spec, truncate_tree(spec, depth, vertex_budget)};
}

TreeFamily pruned_tree(std::uint32_t N, std::uint32_t depth, std::uint64_t vertex_budget) {
    LayeredTree spec = LayeredTree::pruned(N);
    return {spec, truncate_tree(spec, depth, vertex_budget)};
}

AttachedTree attach_trees(WeightedGraph core, VertexId root, std::uint32_t N) {
    return AttachedTree(std::move(core), root, N);
}

LayeredTree alternating_tree(const AlternatingTreeSpec& spec) {
    return LayeredTree::alternating(spec);
}

namespace {

// Integer planar coordinates hashed into one key; gluing falls out of
// coordinate identity.
class CoordInterner {
public:
    VertexId intern(std::int64_t x, std::int64_t y) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
            static_cast<std::uint32_t>(y);
        auto [it, inserted] = ids_.try_emplace(key, static_cast<VertexId>(ids_.size()));
        return it->second;
    }
    std::size_t size() const { return ids_.size(); }

private:
    std::unordered_map<std::uint64_t, VertexId> ids_;
};

void gasket_cells(std::int64_t x0, std::int64_t y0, std::int64_t span, std::uint32_t level,
                  CoordInterner& ids, std::vector<Edge>& edges) {
    if (level == 0) {
        const VertexId a = ids.intern(x0, y0);
        const VertexId b = ids.intern(x0 + span, y0);
        const VertexId c = ids.intern(x0, y0 + span);
        edges.push_back({a, b, 1.0});
        edges.push_back({b, c, 1.0});
        edges.push_back({c, a, 1.0});
        return;
    }
    const std::int64_t half = span / 2;
    gasket_cells(x0, y0, half, level - 1, ids, edges);
    gasket_cells(x0 + half, y0, half, level - 1, ids, edges);
    gasket_cells(x0, y0 + half, half, level - 1, ids, edges);
}

void vicsek_cells(std::int64_t cx, std::int64_t cy, std::uint32_t level, CoordInterner& ids,
                  std::vector<Edge>& edges) {
    if (level == 0) {
        const VertexId c = ids.intern(cx, cy);
        const std::int64_t dx[4] = {1, -1, 0, 0};
        const std::int64_t dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            edges.push_back({c, ids.intern(cx + dx[k], cy + dy[k]), 1.0});
        }
        return;
    }
    std::int64_t offset = 2;
    for (std::uint32_t k = 1; k < level; ++k) offset *= 3;
    vicsek_cells(cx, cy, level - 1, ids, edges);
    vicsek_cells(cx + offset, cy, level - 1, ids, edges);
    vicsek_cells(cx - offset, cy, level - 1, ids, edges);
    vicsek_cells(cx, cy + offset, level - 1, ids, edges);
    vicsek_cells(cx, cy - offset, level - 1, ids, edges);
}

} // namespace

WeightedGraph sierpinski_gasket(std::uint32_t level, std::uint64_t vertex_budget) {
    RWRANGE_REQUIRE(level <= 12, SizeOverflow, "gasket level too deep");
    // v(n+1) = 3 v(n) - 3, v(0) = 3
    std::uint64_t expect = 3;
    for (std::uint32_t k = 0; k < level; ++k) expect = 3 * expect - 3;
    RWRANGE_REQUIRE(expect <= vertex_budget, SizeOverflow,
                    "gasket has " + std::to_string(expect) + " vertices");

    CoordInterner ids;
    std::vector<Edge> edges;
    std::int64_t span = 1;
    for (std::uint32_t k = 0; k < level; ++k) span *= 2;
    gasket_cells(0, 0, span, level, ids, edges);
    return WeightedGraph::build_explicit(edges);
}

WeightedGraph vicsek_tree(std::uint32_t level, std::uint64_t vertex_budget) {
    RWRANGE_REQUIRE(level <= 9, SizeOverflow, "vicsek level too deep");
    // v(n+1) = 5 v(n) - 4, v(0) = 5
    std::uint64_t expect = 5;
    for (std::uint32_t k = 0; k < level; ++k) expect = 5 * expect - 4;
    RWRANGE_REQUIRE(expect <= vertex_budget, SizeOverflow,
                    "vicsek tree has " + std::to_string(expect) + " vertices");

    CoordInterner ids;
    std::vector<Edge> edges;
    vicsek_cells(0, 0, level, ids, edges);
    return WeightedGraph::build_explicit(edges);
}

} // namespace rwrange
