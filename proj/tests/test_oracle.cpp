#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rwrange/oracle.hpp"
#include "rwrange/walk.hpp"

using namespace rwrange;
using namespace rwrange::testing;

TEST_CASE("single edge forces alternation") {
    auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
    auto law = enumerate_range_law(edge, 0, 3);
    CHECK(law.exact);
    CHECK(law.range_prob(2) == 1.0);
    CHECK(law.expected_range() == 2.0);
    CHECK(law.mass_is_exact());
    // endpoint parity: S_3 is the opposite vertex surely
    CHECK(law.endpoint_prob(1) == 1.0);
}

TEST_CASE("triangle laws") {
    auto tri = cycle_graph(3);
    SUBCASE("two steps always see two vertices") {
        auto law = enumerate_range_law(tri, 0, 2);
        CHECK(law.range_prob(2) == 1.0);
        CHECK(law.mass_is_exact());
    }
    SUBCASE("three steps split evenly between ranges 2 and 3") {
        auto law = enumerate_range_law(tri, 0, 3);
        CHECK(close_rel(law.range_prob(2), 0.5, 1e-15));
        CHECK(close_rel(law.range_prob(3), 0.5, 1e-15));
        CHECK(close_rel(law.expected_range(), 2.5, 1e-15));
    }
}

TEST_CASE("prefix expectations agree with separate runs") {
    auto g = random_connected_graph(5, 3, 21);
    auto law10 = enumerate_range_law(g, 0, 10);
    for (std::uint32_t m = 1; m <= 10; ++m) {
        auto law_m = enumerate_range_law(g, 0, m);
        CHECK(close_rel(law10.expected_range_prefix(m), law_m.expected_range(), 1e-13));
    }
}

TEST_CASE("conditional law given the endpoint") {
    auto tri = cycle_graph(3);
    auto law = enumerate_range_law(tri, 0, 4);
    auto cond = law.conditional_range_given_endpoint(0);
    double total = 0.0;
    for (std::uint32_t r = 1; r <= 4; ++r) total += cond[r];
    CHECK(close_rel(total, 1.0, 1e-15));

    // bipartite parity: odd horizon cannot return
    auto edge = WeightedGraph::build_explicit({{0, 1, 1.0}});
    auto odd = enumerate_range_law(edge, 0, 3);
    CHECK_THROWS_AS((void)odd.conditional_range_given_endpoint(0), Error);
}

TEST_CASE("weighted graphs use the float path") {
    auto g = WeightedGraph::build_explicit({{0, 1, 2.0}, {1, 2, 1.0}});
    auto law = enumerate_range_law(g, 1, 4);
    CHECK(!law.exact);
    double total = 0.0;
    for (std::uint32_t r = 1; r <= 4; ++r) total += law.range_prob(r);
    CHECK(std::fabs(total - 1.0) < 1e-12);
    // first step prefers the heavy edge
    auto one = enumerate_range_law(g, 1, 1);
    CHECK(close_rel(one.endpoint_prob(0), 2.0 / 3.0, 1e-12));
}

TEST_CASE("oracle matches Monte Carlo frequencies") {
    auto tri = cycle_graph(3);
    const std::uint32_t n = 5;
    auto law = enumerate_range_law(tri, 0, n);
    const std::uint64_t trials = 200000;
    std::vector<std::uint64_t> counts(n + 1, 0);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Xoshiro256 rng = Xoshiro256::for_trial(424242, t);
        auto s = simulate_graph(tri, 0, n, rng);
        counts[static_cast<std::size_t>(s.range)]++;
    }
    for (std::uint32_t r = 1; r <= n; ++r) {
        const double p = law.range_prob(r);
        const double sigma = std::sqrt(std::max(p * (1 - p) * trials, 1.0));
        CHECK(std::fabs(double(counts[r]) - p * trials) <= 4.0 * sigma);
    }
}

TEST_CASE("budget is enforced") {
    auto g = random_connected_graph(8, 10, 9);
    CHECK_THROWS_AS((void)enumerate_range_law(g, 0, 30), Error);
}

TEST_CASE("uint128 printing") {
    CHECK(uint128_to_string(0) == "0");
    CHECK(uint128_to_string(12345) == "12345");
    unsigned __int128 big = 1;
    for (int i = 0; i < 4; ++i) big *= 1000000000ULL;
    CHECK(uint128_to_string(big) == "1" + std::string(36, '0'));
}
