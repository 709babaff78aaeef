#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwrange/graph.hpp"

namespace rwrange {

/// Exact joint law of (R_n, S_n) by brute-force enumeration of all length-n
/// paths with product weights. On unit-weight graphs the arithmetic is exact:
/// probabilities are integers over the common denominator L^n with
/// L = lcm(degrees), carried in 128-bit words (the path budget keeps every
/// accumulator well inside range). Weighted graphs fall back to long double.
struct ExactRangeLaw {
    std::uint32_t horizon{0};
    std::uint32_t vertex_count{0};
    bool exact{false};
    std::uint64_t scale{1}; // L

    // entry (r, y): probability of {R_n = r, S_n = y}; r in 1..horizon
    std::vector<unsigned __int128> numerators;  // [(r-1) * vertex_count + y], exact mode
    unsigned __int128 denominator{1};           // L^n
    std::vector<long double> float_probs;       // weighted-graph mode

    // E[R_m] for every prefix horizon m = 1..n, from the same enumeration
    std::vector<unsigned __int128> expected_numerators; // over L^{m-1}
    std::vector<long double> expected_floats;

    double prob(std::uint32_t r, VertexId y) const;
    double range_prob(std::uint32_t r) const;     // marginal P(R_n = r)
    double endpoint_prob(VertexId y) const;       // marginal P(S_n = y)
    double expected_range() const;                // E[R_n]
    double expected_range_prefix(std::uint32_t m) const; // E[R_m], m <= n

    /// P(R_n = r | S_n = y); throws NoReturnMass when P(S_n = y) = 0.
    std::vector<double> conditional_range_given_endpoint(VertexId y) const;

    /// Exact total-mass check: sums to exactly L^n in exact mode.
    bool mass_is_exact() const;
};

/// Enumerates all (max degree)^n paths depth-first; throws BudgetExceeded
/// beyond the path budget.
ExactRangeLaw enumerate_range_law(const WeightedGraph& g, VertexId x, std::uint32_t n,
                                  std::uint64_t path_budget = 100'000'000ULL);

std::string uint128_to_string(unsigned __int128 v);

} // namespace rwrange
