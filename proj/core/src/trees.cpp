#include "rwrange/trees.hpp"

#include <algorithm>

namespace rwrange {

void AlternatingTreeSpec::validate() const {
    RWRANGE_REQUIRE(n1 >= 3, SpecInvariantViolated, "need n1 >= 3");
    RWRANGE_REQUIRE(n1 < n2, SpecInvariantViolated, "need n1 < n2");
    RWRANGE_REQUIRE(n2 < (n1 - 1) * (n1 - 1), SpecInvariantViolated,
                    "need n2 < (n1-1)^2 for the contraction hypothesis");
    RWRANGE_REQUIRE(!radii.empty(), SpecInvariantViolated, "need at least one radius k_1");
    RWRANGE_REQUIRE(radii.front() >= 1, SpecInvariantViolated, "k_1 must be >= 1");
    for (std::size_t i = 1; i < radii.size(); ++i) {
        RWRANGE_REQUIRE(radii[i] > 2 * radii[i - 1], SpecInvariantViolated,
                        "radius " + std::to_string(radii[i]) + " violates k_{i+1} > 2 k_i");
    }
}

LayeredTree::LayeredTree(std::vector<std::pair<std::uint32_t, std::uint32_t>> bands,
                         std::string label)
    : bands_(std::move(bands)), label_(std::move(label)) {
    RWRANGE_REQUIRE(!bands_.empty() && bands_.front().first == 0, SpecInvariantViolated,
                    "layer bands must start at 0");
    min_degree_ = bands_.front().second;
    max_degree_ = bands_.front().second;
    for (std::size_t i = 0; i < bands_.size(); ++i) {
        if (i > 0) {
            RWRANGE_REQUIRE(bands_[i].first > bands_[i - 1].first, SpecInvariantViolated,
                            "band starts must increase");
        }
        const std::uint32_t deg = bands_[i].second;
        const bool covers_root = bands_[i].first == 0;
        RWRANGE_REQUIRE(deg >= (covers_root ? 1u : 2u), SpecInvariantViolated,
                        "layer degree too small for an infinite tree");
        min_degree_ = std::min(min_degree_, deg);
        max_degree_ = std::max(max_degree_, deg);
    }
}

LayeredTree LayeredTree::regular(std::uint32_t N) {
    RWRANGE_REQUIRE(N >= 3, DegreeTooSmall, "regular tree needs N >= 3");
    return LayeredTree({{0, N}}, "t" + std::to_string(N));
}

LayeredTree LayeredTree::pruned(std::uint32_t N) {
    RWRANGE_REQUIRE(N >= 3, DegreeTooSmall, "pruned tree needs N >= 3");
    return LayeredTree({{0, N - 1}, {1, N}}, "ttilde" + std::to_string(N));
}

LayeredTree LayeredTree::alternating(const AlternatingTreeSpec& spec) {
    spec.validate();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bands;
    bands.emplace_back(0, spec.n1);
    for (std::size_t i = 0; i < spec.radii.size(); ++i) {
        bands.emplace_back(spec.radii[i], i % 2 == 0 ? spec.n2 : spec.n1);
    }
    return LayeredTree(std::move(bands),
                       "alt" + std::to_string(spec.n1) + "-" + std::to_string(spec.n2));
}

std::uint32_t LayeredTree::degree(std::uint32_t layer) const {
    std::uint32_t deg = bands_.front().second;
    for (const auto& [start, d] : bands_) {
        if (start <= layer) deg = d;
        else break;
    }
    return deg;
}

std::uint32_t LayeredTree::layer_of_address(const TreeAddress& addr) const {
    for (std::size_t i = 0; i < addr.size(); ++i) {
        RWRANGE_REQUIRE(addr[i] < child_count(static_cast<std::uint32_t>(i)), UnknownVertex,
                        "address child index out of range at depth " + std::to_string(i));
    }
    return static_cast<std::uint32_t>(addr.size());
}

AttachedTree::AttachedTree(WeightedGraph core, VertexId root, std::uint32_t N)
    : core_(std::move(core)), root_(root), big_n_(N) {
    core_.check_vertex(root);
    RWRANGE_REQUIRE(N >= 3, DegreeTooSmall, "attachment needs N >= 3");
    RWRANGE_REQUIRE(is_acyclic_tree(core_), NotATree, "attachment core must be a tree");
    RWRANGE_REQUIRE(core_.unit_weights(), NotATree, "attachment core must have unit weights");
    bool has_internal = false;
    for (VertexId v = 0; v < core_.vertex_count(); ++v) {
        const std::uint32_t deg = core_.degree(v);
        if (deg >= 2) {
            has_internal = true;
            RWRANGE_REQUIRE(deg >= 3, LowInternalDegree,
                            "internal core vertex " + std::to_string(v) + " has degree " +
                                std::to_string(deg));
        }
    }
    RWRANGE_REQUIRE(has_internal, LowInternalDegree,
                    "core has no internal vertex (single edge is rejected)");
    label_ = "yn" + std::to_string(N);
}

std::uint32_t AttachedTree::max_degree() const {
    std::uint32_t m = big_n_;
    for (VertexId v = 0; v < core_.vertex_count(); ++v) {
        const std::uint32_t deg = core_.degree(v);
        // leaves are identified with pruned-tree roots -> degree N
        m = std::max(m, deg == 1 ? big_n_ : deg);
    }
    return m;
}

std::uint32_t AttachedTree::child_count_state(const State& s) const {
    if (s.in_tail) return big_n_ - 1;
    const std::uint32_t core_deg = core_.degree(s.core_vertex);
    const bool at_root = s.core_vertex == s.core_parent;
    std::uint32_t count = core_deg - (at_root ? 0 : 1);
    if (core_deg == 1) count += big_n_ - 1; // merged leaf: tail children
    return count;
}

AttachedTree::State AttachedTree::child_state(const State& s, std::uint32_t idx) const {
    if (s.in_tail) return State{s.depth + 1, 0, 0, true};
    const bool at_root = s.core_vertex == s.core_parent;
    auto nbrs = core_.neighbors(s.core_vertex);
    std::uint32_t seen = 0;
    for (VertexId w : nbrs) {
        if (!at_root && w == s.core_parent) continue;
        if (seen == idx) return State{s.depth + 1, w, s.core_vertex, false};
        ++seen;
    }
    // remaining indices are tail children hanging off a merged leaf
    return State{s.depth + 1, 0, 0, true};
}

namespace {

template <class Tree>
TreeTruncation truncate_impl(const Tree& tree, std::uint32_t radius, std::uint64_t budget) {
    RWRANGE_REQUIRE(radius >= 1, SpecInvariantViolated, "truncation radius must be >= 1");

    struct Pending {
        typename Tree::State state;
        std::uint32_t layer;
        VertexId parent;
        bool has_parent;
    };

    std::vector<Pending> queue;
    queue.push_back({tree.root(), 0, 0, false});

    std::vector<Edge> edges;
    std::vector<std::uint32_t> layer_of;
    std::vector<VertexId> last_layer;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Pending cur = queue[head];
        const VertexId id = static_cast<VertexId>(head);
        layer_of.push_back(cur.layer);
        if (cur.has_parent) edges.push_back({cur.parent, id, 1.0});
        if (cur.layer == radius) {
            last_layer.push_back(id);
            continue;
        }
        const std::uint32_t cc = tree.child_count_state(cur.state);
        RWRANGE_REQUIRE(queue.size() + cc <= budget, SizeOverflow,
                        "tree truncation exceeds vertex budget of " + std::to_string(budget));
        for (std::uint32_t i = 0; i < cc; ++i) {
            queue.push_back({tree.child_state(cur.state, i), cur.layer + 1, id, true});
        }
    }

    TreeTruncation out;
    out.graph = WeightedGraph::build_explicit(edges);
    out.graph.mark_artificial(std::move(last_layer));
    out.root = 0;
    out.radius = radius;
    out.layer_of = std::move(layer_of);
    return out;
}

} // namespace

TreeTruncation truncate_tree(const LayeredTree& tree, std::uint32_t radius,
                             std::uint64_t vertex_budget) {
    return truncate_impl(tree, radius, vertex_budget);
}

TreeTruncation truncate_tree(const AttachedTree& tree, std::uint32_t radius,
                             std::uint64_t vertex_budget) {
    return truncate_impl(tree, radius, vertex_budget);
}

} // namespace rwrange
