#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "rwrange/graph.hpp"

using namespace rwrange;
using namespace rwrange::testing;

TEST_CASE("build_explicit basic weights") {
    auto g = WeightedGraph::build_explicit({{0, 1, 1.0}});
    CHECK(g.vertex_count() == 2);
    CHECK(g.vertex_weight(0) == 1.0);
    CHECK(g.vertex_weight(1) == 1.0);

    auto path = path_graph(3);
    CHECK(path.vertex_weight(1) == 2.0);
    CHECK(path.vertex_weight(0) == 1.0);
    CHECK(path.vertex_weight(2) == 1.0);

    auto weighted = WeightedGraph::build_explicit({{0, 1, 2.0}, {1, 2, 3.0}});
    CHECK(weighted.vertex_weight(1) == 5.0);
    CHECK(weighted.min_edge_weight() == 2.0);
    CHECK(weighted.max_edge_weight() == 3.0);
}

TEST_CASE("build_explicit validation") {
    CHECK_THROWS_AS(WeightedGraph::build_explicit({{0, 0, 1.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph::build_explicit({{0, 1, 0.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph::build_explicit({{0, 1, -2.0}}), Error);
    CHECK_THROWS_AS(WeightedGraph::build_explicit({{0, 1, 1.0}, {1, 0, 1.0}}), Error);
    // vertex 3 unreachable
    CHECK_THROWS_AS(WeightedGraph::build_explicit({{0, 1, 1.0}, {2, 3, 1.0}}), Error);

    try {
        WeightedGraph::build_explicit({{0, 1, 1.0}, {1, 0, 2.0}});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicateEdge);
    }
}

TEST_CASE("stored adjacency is exactly symmetric") {
    auto g = random_connected_graph(40, 25, 77);
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto ws = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            CHECK(g.edge_weight(nbrs[i], u) == ws[i]); // bit-identical
        }
    }
}

TEST_CASE("vertex weights of standard shapes") {
    auto star = star_graph(5);
    CHECK(star.vertex_weight(0) == 5.0);
    auto weighted = WeightedGraph::build_explicit({{0, 1, 0.5}, {0, 2, 1.5}});
    CHECK(weighted.vertex_weight(0) == 2.0);
}

TEST_CASE("ball uses the strict convention") {
    auto path = path_graph(5);
    SUBCASE("radius one is the singleton") {
        Ball b = ball(path, 2, 1);
        REQUIRE(b.members.size() == 1);
        CHECK(b.members[0] == 2);
        CHECK(b.boundary.size() == 2);
    }
    SUBCASE("radius two on a path center") {
        Ball b = ball(path, 2, 2);
        CHECK(b.members.size() == 3); // x and both neighbors
    }
}

TEST_CASE("ball shells of the 3-regular tree") {
    // hand count: 1 + 3 + 6 = 10 members within distance < 3
    std::vector<Edge> edges;
    // root 0 with children 1..3; each child has 2 further children
    edges.push_back({0, 1, 1.0});
    edges.push_back({0, 2, 1.0});
    edges.push_back({0, 3, 1.0});
    VertexId next = 4;
    for (VertexId c = 1; c <= 3; ++c) {
        edges.push_back({c, next++, 1.0});
        edges.push_back({c, next++, 1.0});
    }
    // one extra shell so B(0,3) has a boundary
    const VertexId first_leaf = 4;
    for (VertexId l = first_leaf; l < 10; ++l) {
        edges.push_back({l, next++, 1.0});
        edges.push_back({l, next++, 1.0});
    }
    auto g = WeightedGraph::build_explicit(edges);
    Ball b = ball(g, 0, 3);
    CHECK(b.members.size() == 10);
    CHECK(b.boundary.size() == 12);
}

TEST_CASE("volume sums vertex weights over the ball") {
    auto star = star_graph(4);
    CHECK(volume(star, 0, 1) == 4.0); // mu_x = deg(x) on unit weights

    auto pair = WeightedGraph::build_explicit({{0, 1, 2.5}});
    CHECK(volume(pair, 0, 2) == 5.0); // both endpoints, 2w

    // unit 4-regular tree root, two shells: 4 + 4*4 = 20
    std::vector<Edge> edges;
    VertexId next = 5;
    for (VertexId c = 1; c <= 4; ++c) edges.push_back({0, c, 1.0});
    for (VertexId c = 1; c <= 4; ++c) {
        for (int k = 0; k < 3; ++k) edges.push_back({c, next++, 1.0});
    }
    auto t4 = WeightedGraph::build_explicit(edges);
    CHECK(volume(t4, 0, 2) == 20.0);
}

TEST_CASE("balls and volumes are monotone in the radius") {
    auto g = random_connected_graph(60, 40, 1234);
    for (VertexId x : {VertexId(0), VertexId(17), VertexId(42)}) {
        double prev_vol = 0.0;
        std::size_t prev_members = 0;
        for (std::uint32_t n = 1; n <= 8; ++n) {
            Ball b = ball(g, x, n);
            CHECK(b.members.size() >= prev_members);
            const double vol = g.set_weight(b.members);
            CHECK(vol >= prev_vol);
            prev_members = b.members.size();
            prev_vol = vol;
        }
        CHECK(ball(g, x, 1).members.size() == 1);
        CHECK(g.vertex_weight(x) <= double(g.max_degree()) * g.max_edge_weight());
        CHECK(g.vertex_weight(x) >= g.min_edge_weight());
    }
}

TEST_CASE("edge list round trip") {
    auto g = random_connected_graph(25, 12, 99);
    const std::string text = write_edge_list(g);
    std::istringstream in(text);
    auto h = read_edge_list(in);
    REQUIRE(h.vertex_count() == g.vertex_count());
    REQUIRE(h.edge_count() == g.edge_count());
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        auto a = g.neighbors(u);
        auto b = h.neighbors(u);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == b[i]);
            CHECK(g.neighbor_weights(u)[i] == h.neighbor_weights(u)[i]);
        }
    }
}

TEST_CASE("unknown vertices are rejected") {
    auto g = path_graph(3);
    CHECK_THROWS_AS((void)g.vertex_weight(7), Error);
    CHECK_THROWS_AS((void)ball(g, 9, 1), Error);
}

TEST_CASE("bipartite and tree detection") {
    CHECK(is_bipartite(path_graph(6)));
    CHECK(!is_bipartite(cycle_graph(5)));
    CHECK(is_bipartite(cycle_graph(6)));
    CHECK(is_acyclic_tree(random_tree(30, 5)));
    CHECK(!is_acyclic_tree(cycle_graph(4)));
}
