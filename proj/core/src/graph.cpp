#include "rwrange/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace rwrange {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::NotATree: return "NotATree";
        case ErrorCode::LowInternalDegree: return "LowInternalDegree";
        case ErrorCode::SpecInvariantViolated: return "SpecInvariantViolated";
        case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
        case ErrorCode::PartialFunction: return "PartialFunction";
        case ErrorCode::DisconnectedSets: return "DisconnectedSets";
        case ErrorCode::SolverDivergence: return "SolverDivergence";
        case ErrorCode::BallCoversGraph: return "BallCoversGraph";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::NotLayered: return "NotLayered";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NoReturnMass: return "NoReturnMass";
        case ErrorCode::InvalidInterval: return "InvalidInterval";
        case ErrorCode::InsufficientGrid: return "InsufficientGrid";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "UnknownError";
}

WeightedGraph WeightedGraph::build_explicit(const std::vector<Edge>& edges) {
    RWRANGE_REQUIRE(!edges.empty(), SpecInvariantViolated, "edge list is empty");

    VertexId max_id = 0;
    for (const Edge& e : edges) {
        RWRANGE_REQUIRE(e.u != e.v, SelfLoop,
                        "self-loop at vertex " + std::to_string(e.u));
        RWRANGE_REQUIRE(e.weight > 0.0 && std::isfinite(e.weight), NonPositiveWeight,
                        "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") has weight " + std::to_string(e.weight));
        max_id = std::max(max_id, std::max(e.u, e.v));
    }

    // Symmetric closure: store each input pair in both directions, detect
    // duplicates on the canonical (min,max) ordering after sorting.
    struct Half {
        VertexId from, to;
        double w;
    };
    std::vector<Half> halves;
    halves.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        halves.push_back({e.u, e.v, e.weight});
        halves.push_back({e.v, e.u, e.weight});
    }
    std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t i = 1; i < halves.size(); ++i) {
        RWRANGE_REQUIRE(!(halves[i].from == halves[i - 1].from && halves[i].to == halves[i - 1].to),
                        DuplicateEdge,
                        "pair (" + std::to_string(halves[i].from) + "," +
                            std::to_string(halves[i].to) + ") listed twice");
    }

    WeightedGraph g;
    g.vertex_count_ = max_id + 1;
    g.offsets_.assign(g.vertex_count_ + 1, 0);
    for (const Half& h : halves) g.offsets_[h.from + 1]++;
    for (std::uint32_t v = 0; v < g.vertex_count_; ++v) g.offsets_[v + 1] += g.offsets_[v];

    g.neighbor_ids_.resize(halves.size());
    g.weights_.resize(halves.size());
    {
        std::vector<std::uint32_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const Half& h : halves) {
            std::uint32_t slot = cursor[h.from]++;
            g.neighbor_ids_[slot] = h.to;
            g.weights_[slot] = h.w;
        }
    }

    g.vertex_weights_.assign(g.vertex_count_, 0.0);
    g.w_min_ = std::numeric_limits<double>::infinity();
    g.w_max_ = 0.0;
    for (std::uint32_t v = 0; v < g.vertex_count_; ++v) {
        double mu = 0.0;
        for (std::uint32_t i = g.offsets_[v]; i < g.offsets_[v + 1]; ++i) mu += g.weights_[i];
        g.vertex_weights_[v] = mu;
        g.max_degree_ = std::max(g.max_degree_, g.offsets_[v + 1] - g.offsets_[v]);
    }
    for (double w : g.weights_) {
        g.w_min_ = std::min(g.w_min_, w);
        g.w_max_ = std::max(g.w_max_, w);
    }

    RWRANGE_REQUIRE(is_connected(g), Disconnected, "input edge list is not connected");
    return g;
}

double WeightedGraph::set_weight(std::span<const VertexId> vertices) const {
    double total = 0.0;
    for (VertexId x : vertices) total += vertex_weight(x);
    return total;
}

double WeightedGraph::edge_weight(VertexId x, VertexId y) const {
    check_vertex(y);
    auto nbrs = neighbors(x);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), y);
    if (it == nbrs.end() || *it != y) return 0.0;
    return neighbor_weights(x)[static_cast<std::size_t>(it - nbrs.begin())];
}

void WeightedGraph::mark_artificial(std::vector<VertexId> boundary) {
    for (VertexId v : boundary) check_vertex(v);
    artificial_mask_.assign(vertex_count_, 0);
    for (VertexId v : boundary) artificial_mask_[v] = 1;
    artificial_ = std::move(boundary);
}

std::vector<std::uint32_t> bfs_distances(const WeightedGraph& g, VertexId x) {
    g.check_vertex(x);
    constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
    std::vector<VertexId> queue;
    queue.reserve(g.vertex_count());
    dist[x] = 0;
    queue.push_back(x);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (VertexId w : g.neighbors(v)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

Ball ball(const WeightedGraph& g, VertexId x, std::uint32_t n) {
    g.check_vertex(x);
    RWRANGE_REQUIRE(n >= 1, SpecInvariantViolated, "ball radius must be >= 1");

    Ball b;
    b.center = x;
    b.radius = n;

    // Plain BFS stopped at depth n; members use the strict d < n convention.
    std::vector<std::uint32_t> dist(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
    std::vector<VertexId> queue;
    dist[x] = 0;
    queue.push_back(x);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        if (dist[v] >= n) break;
        if (dist[v] == n - 1) {
            // next shell is the exterior boundary; enqueue but do not expand
        }
        for (VertexId w : g.neighbors(v)) {
            if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    for (VertexId v : queue) {
        if (dist[v] < n) {
            b.members.push_back(v);
            b.distances.push_back(dist[v]);
        } else if (dist[v] == n) {
            b.boundary.push_back(v);
        }
    }
    return b;
}

double volume(const WeightedGraph& g, VertexId x, std::uint32_t n) {
    Ball b = ball(g, x, n);
    return g.set_weight(b.members);
}

bool is_connected(const WeightedGraph& g) {
    if (g.vertex_count() == 0) return true;
    auto dist = bfs_distances(g, 0);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (dist[v] == std::numeric_limits<std::uint32_t>::max()) return false;
    return true;
}

bool is_acyclic_tree(const WeightedGraph& g) {
    return is_connected(g) && g.edge_count() + 1 == g.vertex_count();
}

bool is_bipartite(const WeightedGraph& g) {
    std::vector<std::int8_t> color(g.vertex_count(), -1);
    std::vector<VertexId> queue;
    color[0] = 0;
    queue.push_back(0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        VertexId v = queue[head];
        for (VertexId w : g.neighbors(v)) {
            if (color[w] == -1) {
                color[w] = static_cast<std::int8_t>(1 - color[v]);
                queue.push_back(w);
            } else if (color[w] == color[v]) {
                return false;
            }
        }
    }
    return true;
}

std::string write_edge_list(const WeightedGraph& g) {
    std::ostringstream out;
    out << "# rwrange edge list: u v w\n";
    out.precision(17);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto ws = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (u < nbrs[i]) out << u << ' ' << nbrs[i] << ' ' << ws[i] << '\n';
        }
    }
    return out.str();
}

WeightedGraph read_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Edge e;
        if (ls >> e.u >> e.v >> e.weight) edges.push_back(e);
    }
    return WeightedGraph::build_explicit(edges);
}

WeightedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    RWRANGE_REQUIRE(in.good(), ConfigInvalid, "cannot open edge list: " + path);
    return read_edge_list(in);
}

} // namespace rwrange
