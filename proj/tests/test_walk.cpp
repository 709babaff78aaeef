#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rwrange/builders.hpp"
#include "rwrange/resistance.hpp"
#include "rwrange/walk.hpp"

using namespace rwrange;
using namespace rwrange::testing;

TEST_CASE("single trial basics") {
    auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
    Xoshiro256 rng(1);
    auto s1 = simulate_graph(edge, 0, 1, rng);
    CHECK(s1.range == 1); // R_1 counts only S_0

    for (std::uint64_t n : {2ull, 5ull, 9ull}) {
        Xoshiro256 r(7);
        auto s = simulate_graph(edge, 0, n, r);
        CHECK(s.range <= 2);
        CHECK(s.range >= 1);
    }
}

TEST_CASE("determinism of seeded trials") {
    auto g = random_connected_graph(30, 20, 5);
    auto a = run_graph_trials(g, 0, 500, 64, 99, 1);
    auto b = run_graph_trials(g, 0, 500, 64, 99, 2); // different job count
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].range == b[i].range);
        CHECK(a[i].final_vertex == b[i].final_vertex);
    }
}

TEST_CASE("next-step frequencies are proportional to weights") {
    // unit weights: uniform over 4 neighbors
    auto star = star_graph(4);
    std::uint64_t counts[5] = {0, 0, 0, 0, 0};
    const std::uint64_t draws = 100000;
    for (std::uint64_t t = 0; t < draws; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(31339, t);
        auto s = simulate_graph(star, 0, 1, rng);
        counts[s.final_vertex]++;
    }
    for (VertexId v = 1; v <= 4; ++v) {
        const double p = 0.25;
        const double sigma = std::sqrt(p * (1 - p) * draws);
        CHECK(std::fabs(double(counts[v]) - p * draws) <= 3.0 * sigma);
    }

    // weighted: 0.5 vs 1.5
    auto weighted = WeightedGraph::build_explicit({{0, 1, 0.5}, {0, 2, 1.5}});
    std::uint64_t heavy = 0;
    for (std::uint64_t t = 0; t < draws; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(555, t);
        auto s = simulate_graph(weighted, 0, 1, rng);
        if (s.final_vertex == 2) ++heavy;
    }
    const double p = 0.75;
    const double sigma = std::sqrt(p * (1 - p) * draws);
    CHECK(std::fabs(double(heavy) - p * draws) <= 3.0 * sigma);
}

TEST_CASE("checkpointed ranges are nondecreasing") {
    auto g = random_connected_graph(40, 30, 17);
    const std::uint64_t cps[] = {1, 2, 5, 10, 50, 100, 400};
    for (std::uint64_t t = 0; t < 50; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(2024, t);
        auto ranges = simulate_graph_checkpoints(g, 3, cps, rng);
        REQUIRE(ranges.size() == 7);
        CHECK(ranges[0] == 1);
        for (std::size_t i = 1; i < ranges.size(); ++i) CHECK(ranges[i] >= ranges[i - 1]);
    }

    auto tree = LayeredTree::regular(3);
    for (std::uint64_t t = 0; t < 50; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(4048, t);
        auto ranges = simulate_tree_checkpoints(tree, {}, cps, rng);
        CHECK(ranges[0] == 1);
        for (std::size_t i = 1; i < ranges.size(); ++i) CHECK(ranges[i] >= ranges[i - 1]);
    }
}

TEST_CASE("tree walks match explicit walks in law") {
    // distribution of R_n on T3 via the implicit model vs the truncation
    auto spec = LayeredTree::regular(3);
    auto fam = regular_tree(3, 13); // walk of 12 steps cannot feel layer 13
    const std::uint64_t n = 12, trials = 4000;
    auto tree_samples = run_tree_trials(spec, {}, n, trials, 1112, 2);
    auto graph_samples = run_graph_trials(fam.truncation.graph, fam.truncation.root, n, trials,
                                          1112, 2);
    double tree_mean = 0, graph_mean = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        tree_mean += double(tree_samples[i].range);
        graph_mean += double(graph_samples[i].range);
    }
    tree_mean /= trials;
    graph_mean /= trials;
    // same walk law; two independent MC estimates of E[R_12]
    CHECK(std::fabs(tree_mean - graph_mean) < 0.15);
}

TEST_CASE("walks from an off-root tree address") {
    AlternatingTreeSpec spec;
    spec.n1 = 4;
    spec.n2 = 8;
    spec.radii = {3};
    auto tree = alternating_tree(spec);
    TreeAddress start{0, 0, 0, 1, 2}; // layer 5, inside the 8-band
    auto samples = run_tree_trials(tree, start, 50, 200, 9, 1);
    for (const auto& s : samples) {
        CHECK(s.range >= 1);
        CHECK(s.range <= 50);
    }
    TreeAddress bad{3, 0}; // root has children 0..3; index 3 valid, then child 0 fine
    CHECK_NOTHROW(run_tree_trials(tree, bad, 5, 100, 1, 1));
    TreeAddress invalid{4};
    CHECK_THROWS_AS(run_tree_trials(tree, invalid, 5, 100, 1, 1), Error);
}

TEST_CASE("evolve_distribution") {
    auto path = path_graph(3);
    SUBCASE("zero steps is a point mass") {
        auto d = evolve_distribution(path, 1, 0);
        CHECK(d.mass[1] == 1.0);
        CHECK(d.total() == 1.0);
    }
    SUBCASE("forced alternation on a single edge") {
        auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
        auto d = evolve_distribution(edge, 0, 2);
        CHECK(d.mass[0] == 1.0);
    }
    SUBCASE("two steps from a path center") {
        // interior center: half returns, a quarter reaches each side
        auto path5 = path_graph(5);
        auto d = evolve_distribution(path5, 2, 2);
        CHECK(close_rel(d.mass[2], 0.5));
        CHECK(close_rel(d.mass[0], 0.25));
        CHECK(close_rel(d.mass[4], 0.25));
        CHECK(std::fabs(d.total() - 1.0) < 1e-12);
        // degree-one endpoints force all mass back
        auto d3 = evolve_distribution(path, 1, 2);
        CHECK(d3.mass[1] == 1.0);
    }
    SUBCASE("killed evolution loses mass monotonically") {
        auto box = lattice_box(2, 7);
        const VertexId center = 3 * 7 + 3;
        Ball b = ball(box, center, 3);
        double prev = 1.0;
        for (std::uint32_t k = 1; k <= 8; ++k) {
            auto d = evolve_distribution(box, center, k, b.boundary);
            const double alive = d.total();
            CHECK(alive <= prev + 1e-12);
            CHECK(close_rel(alive + d.killed_mass, 1.0, 1e-12));
            prev = alive;
        }
    }
}

TEST_CASE("exact evolution matches simulation") {
    auto path = path_graph(3);
    auto d = evolve_distribution(path, 1, 2);
    const std::uint64_t draws = 200000;
    std::uint64_t at[3] = {0, 0, 0};
    for (std::uint64_t t = 0; t < draws; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(8080, t);
        auto s = simulate_graph(path, 1, 2, rng);
        at[s.final_vertex]++;
    }
    for (VertexId v = 0; v < 3; ++v) {
        const double p = d.mass[v];
        const double sigma = std::sqrt(p * (1 - p) * draws);
        CHECK(std::fabs(double(at[v]) - p * draws) <= 3.0 * sigma);
    }
}

TEST_CASE("return tails") {
    auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
    auto tail = return_tail(edge, 0, 4);
    CHECK(tail.survival[0] == 1.0);
    CHECK(tail.survival[1] == 1.0);
    CHECK(tail.survival[2] == 0.0); // must return at step two
    CHECK(tail.survival[4] == 0.0);

    auto star = star_graph(3);
    auto ts = return_tail(star, 0, 3);
    CHECK(ts.survival[1] == 1.0);
    CHECK(ts.survival[2] == 0.0); // leaves bounce straight back

    // tails are nonincreasing
    auto g = random_connected_graph(20, 14, 3);
    auto t = return_tail(g, 2, 30);
    for (std::size_t m = 1; m < t.survival.size(); ++m) {
        CHECK(t.survival[m] <= t.survival[m - 1] + 1e-15);
    }
}

TEST_CASE("escape_before_exit identity") {
    auto fam = regular_tree(4, 5);
    const auto& t4 = fam.truncation.graph;
    SUBCASE("radius one escapes surely") {
        CHECK(escape_before_exit(t4, 0, 1) == 1.0);
        CHECK(close_rel(t4.vertex_weight(0) * escape_before_exit(t4, 0, 1) * rho_n(t4, 0, 1),
                        1.0));
    }
    SUBCASE("radius two on T4: mu * escape = 3 = 1/rho") {
        const double esc = escape_before_exit(t4, 0, 2);
        CHECK(close_rel(4.0 * esc, 3.0));
    }
    SUBCASE("2-d box center cross-check") {
        auto box = lattice_box(2, 9);
        const VertexId center = 4 * 9 + 4;
        for (std::uint32_t n : {1u, 2u, 3u}) {
            const double esc = escape_before_exit(box, center, n);
            const double rho = rho_n(box, center, n);
            CHECK(close_rel(box.vertex_weight(center) * esc * rho, 1.0));
        }
    }
}

TEST_CASE("heat kernel diagonal") {
    auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
    CHECK(heat_kernel_diag(edge, 0, 0) == 1.0); // 1/mu
    CHECK(close_rel(heat_kernel_diag(edge, 0, 2), 1.0));
    CHECK(heat_kernel_diag(edge, 0, 3) == 0.0); // parity

    auto box = lattice_box(2, 9);
    CHECK(heat_kernel_diag(box, 4 * 9 + 4, 3) == 0.0); // bipartite, odd k
}

TEST_CASE("expected exit times") {
    auto path5 = path_graph(5);
    SUBCASE("exit from the singleton ball is one step") {
        CHECK(close_rel(expected_exit_time(path5, 2, 1), 1.0));
    }
    SUBCASE("path center, radius two") {
        // absorbing chain by hand: E_center = 4, E_side = 3
        CHECK(close_rel(expected_exit_time(path5, 2, 2), 4.0));
    }
    SUBCASE("bounded by rho * volume") {
        auto fam = regular_tree(4, 4);
        const auto& t4 = fam.truncation.graph;
        const double bound = rho_n(t4, 0, 2) * volume(t4, 0, 2);
        CHECK(close_rel(bound, 20.0 / 3.0));
        CHECK(expected_exit_time(t4, 0, 2) <= bound + 1e-8);

        auto box = lattice_box(2, 11);
        const VertexId center = 5 * 11 + 5;
        for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
            CHECK(expected_exit_time(box, center, n) <=
                  rho_n(box, center, n) * volume(box, center, n) + 1e-8);
        }
    }
}

TEST_CASE("radial chain") {
    SUBCASE("transition rule") {
        auto t4 = LayeredTree::regular(4);
        RadialChain chain(t4);
        CHECK(chain.inward_probability(3) == 0.25);

        AlternatingTreeSpec spec;
        spec.n1 = 4;
        spec.n2 = 8;
        spec.radii = {3};
        RadialChain alt(alternating_tree(spec));
        CHECK(alt.inward_probability(5) == 0.125); // inside the 8-band
        CHECK(alt.inward_probability(1) == 0.25);
    }
    SUBCASE("ballistic probability is the product of outward steps") {
        auto t3 = LayeredTree::regular(3);
        RadialChain chain(t3);
        const std::uint32_t k = 6;
        auto law = chain.distance_law(k);
        double expect = 1.0; // first step outward surely
        for (std::uint32_t r = 1; r < k; ++r) expect *= (1.0 - 1.0 / 3.0);
        CHECK(close_rel(law[k], expect));
    }
    SUBCASE("diag matches the truncation heat kernel") {
        auto t3 = LayeredTree::regular(3);
        auto fam = regular_tree(3, 12);
        RadialChain chain(t3);
        for (std::uint32_t k : {0u, 2u, 4u, 8u}) {
            CHECK(close_rel(chain.diag(k),
                            heat_kernel_diag(fam.truncation.graph, fam.truncation.root, k)));
        }
    }
    SUBCASE("root survival matches the truncation return tail") {
        auto t4 = LayeredTree::regular(4);
        auto fam = regular_tree(4, 8);
        auto exact = radial_chain(t4).survival_root(12);
        auto explicit_tail = return_tail(fam.truncation.graph, fam.truncation.root, 7);
        for (std::uint32_t m = 0; m <= 7; ++m) {
            CHECK(close_rel(exact[m], explicit_tail.survival[m]));
        }
    }
    SUBCASE("tail limit approaches g_3 from above") {
        auto t3 = LayeredTree::regular(3);
        auto surv = radial_chain(t3).survival_root(4000);
        CHECK(surv[4000] >= 0.5);
        CHECK(surv[4000] <= 0.52);
        for (std::size_t m = 1; m < surv.size(); ++m) CHECK(surv[m] <= surv[m - 1] + 1e-15);
    }
    SUBCASE("distance law matches tree simulation") {
        auto t3 = LayeredTree::regular(3);
        const std::uint32_t k = 15;
        auto law = radial_chain(t3).distance_law(k);
        const std::uint64_t trials = 100000;
        auto samples = run_tree_trials(t3, {}, k, trials, 777, 2);
        // compare mean distance at 3 sigma (aggregate statistic)
        double exact_mean = 0.0;
        double exact_m2 = 0.0;
        for (std::size_t r = 0; r < law.size(); ++r) {
            exact_mean += double(r) * law[r];
            exact_m2 += double(r) * double(r) * law[r];
        }
        const double var = exact_m2 - exact_mean * exact_mean;
        double mc_mean = 0.0;
        for (const auto& s : samples) mc_mean += s.final_distance;
        mc_mean /= double(trials);
        const double sigma = std::sqrt(var / double(trials));
        CHECK(std::fabs(mc_mean - exact_mean) <= 3.0 * sigma);
        // and the ballistic cell itself
        std::uint64_t ballistic = 0;
        for (const auto& s : samples) {
            if (s.final_distance == k) ++ballistic;
        }
        const double p = law[k];
        const double cell_sigma = std::sqrt(p * (1 - p) * trials);
        CHECK(std::fabs(double(ballistic) - p * trials) <= 3.0 * cell_sigma);
    }
}

TEST_CASE("budget enforcement") {
    auto g = path_graph(4);
    CHECK_THROWS_AS(run_graph_trials(g, 0, 1000, 1000, 1, 1, 100), Error);
    auto t = LayeredTree::regular(3);
    CHECK_THROWS_AS(run_tree_trials(t, {}, 1000, 1000, 1, 1, 100), Error);
}
