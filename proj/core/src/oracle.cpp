#include "rwrange/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rwrange {

namespace {

using u128 = unsigned __int128;

struct DfsContext {
    const WeightedGraph* g;
    std::uint32_t n;
    bool exact;
    std::uint64_t scale;
    ExactRangeLaw* law;
    std::vector<std::uint8_t> visited;
    std::uint32_t distinct{0};
};

// depth d: the prefix S_0..S_d has been chosen; weight is its probability
// scaled by scale^d (exact mode) or plain (float mode).
void dfs_exact(DfsContext& ctx, VertexId v, std::uint32_t d, u128 weight) {
    // R_{d+1} = |{S_0..S_d}| contributes to the prefix expectation
    ctx.law->expected_numerators[d + 1] += weight * ctx.distinct;
    if (d + 1 == ctx.n) {
        // children are the endpoints S_n; R_n is already frozen
        const u128 child_w = weight * (ctx.scale / ctx.g->degree(v));
        for (VertexId w : ctx.g->neighbors(v)) {
            ctx.law->numerators[static_cast<std::size_t>(ctx.distinct - 1) *
                                    ctx.law->vertex_count + w] += child_w;
            ctx.law->expected_numerators[d + 2] += child_w * ctx.distinct;
        }
        return;
    }
    const u128 child_w = weight * (ctx.scale / ctx.g->degree(v));
    for (VertexId w : ctx.g->neighbors(v)) {
        const bool fresh = !ctx.visited[w];
        if (fresh) {
            ctx.visited[w] = 1;
            ++ctx.distinct;
        }
        dfs_exact(ctx, w, d + 1, child_w);
        if (fresh) {
            ctx.visited[w] = 0;
            --ctx.distinct;
        }
    }
}

void dfs_float(DfsContext& ctx, VertexId v, std::uint32_t d, long double weight) {
    ctx.law->expected_floats[d + 1] += weight * ctx.distinct;
    auto nbrs = ctx.g->neighbors(v);
    auto ws = ctx.g->neighbor_weights(v);
    const long double inv_mu = 1.0L / ctx.g->vertex_weight(v);
    if (d + 1 == ctx.n) {
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const long double child_w = weight * ws[i] * inv_mu;
            ctx.law->float_probs[static_cast<std::size_t>(ctx.distinct - 1) *
                                     ctx.law->vertex_count + nbrs[i]] += child_w;
            ctx.law->expected_floats[d + 2] += child_w * ctx.distinct;
        }
        return;
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const VertexId w = nbrs[i];
        const long double child_w = weight * ws[i] * inv_mu;
        const bool fresh = !ctx.visited[w];
        if (fresh) {
            ctx.visited[w] = 1;
            ++ctx.distinct;
        }
        dfs_float(ctx, w, d + 1, child_w);
        if (fresh) {
            ctx.visited[w] = 0;
            --ctx.distinct;
        }
    }
}

} // namespace

ExactRangeLaw enumerate_range_law(const WeightedGraph& g, VertexId x, std::uint32_t n,
                                  std::uint64_t path_budget) {
    g.check_vertex(x);
    RWRANGE_REQUIRE(n >= 1, SpecInvariantViolated, "horizon must be >= 1");

    double log_paths = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) log_paths += std::log2(double(g.max_degree()));
    RWRANGE_REQUIRE(log_paths <= std::log2(double(path_budget)), BudgetExceeded,
                    "path enumeration exceeds the budget");

    ExactRangeLaw law;
    law.horizon = n;
    law.vertex_count = g.vertex_count();
    law.exact = g.unit_weights();

    if (law.exact) {
        std::uint64_t L = 1;
        for (VertexId v = 0; v < g.vertex_count(); ++v) L = std::lcm(L, std::uint64_t(g.degree(v)));
        law.scale = L;
        // Everything fits: with max_degree^n <= 1e8 the scaled denominator
        // L^n stays far below 2^127.
        double log_den = n * std::log2(double(L));
        RWRANGE_REQUIRE(log_den < 100.0, BudgetExceeded, "scaled denominator too large");
        law.denominator = 1;
        for (std::uint32_t i = 0; i < n; ++i) law.denominator *= L;
        law.numerators.assign(static_cast<std::size_t>(n) * g.vertex_count(), 0);
        law.expected_numerators.assign(n + 2, 0);

        DfsContext ctx{&g, n, true, L, &law, std::vector<std::uint8_t>(g.vertex_count(), 0), 0};
        ctx.visited[x] = 1;
        ctx.distinct = 1;
        dfs_exact(ctx, x, 0, 1);
    } else {
        law.scale = 1;
        law.float_probs.assign(static_cast<std::size_t>(n) * g.vertex_count(), 0.0L);
        law.expected_floats.assign(n + 2, 0.0L);

        DfsContext ctx{&g, n, false, 1, &law, std::vector<std::uint8_t>(g.vertex_count(), 0), 0};
        ctx.visited[x] = 1;
        ctx.distinct = 1;
        dfs_float(ctx, x, 0, 1.0L);
    }
    return law;
}

double ExactRangeLaw::prob(std::uint32_t r, VertexId y) const {
    RWRANGE_REQUIRE(r >= 1 && r <= horizon && y < vertex_count, UnknownVertex,
                    "law entry out of range");
    const std::size_t idx = static_cast<std::size_t>(r - 1) * vertex_count + y;
    if (exact) {
        return static_cast<double>(static_cast<long double>(numerators[idx]) /
                                   static_cast<long double>(denominator));
    }
    return static_cast<double>(float_probs[idx]);
}

double ExactRangeLaw::range_prob(std::uint32_t r) const {
    double s = 0.0;
    for (VertexId y = 0; y < vertex_count; ++y) s += prob(r, y);
    return s;
}

double ExactRangeLaw::endpoint_prob(VertexId y) const {
    double s = 0.0;
    for (std::uint32_t r = 1; r <= horizon; ++r) s += prob(r, y);
    return s;
}

double ExactRangeLaw::expected_range() const { return expected_range_prefix(horizon); }

double ExactRangeLaw::expected_range_prefix(std::uint32_t m) const {
    RWRANGE_REQUIRE(m >= 1 && m <= horizon, SpecInvariantViolated, "prefix out of range");
    if (exact) {
        // E[R_m] sums over prefixes of length m-1: denominator L^{m-1}
        u128 den = 1;
        for (std::uint32_t i = 0; i + 1 < m; ++i) den *= scale;
        return static_cast<double>(static_cast<long double>(expected_numerators[m]) /
                                   static_cast<long double>(den));
    }
    return static_cast<double>(expected_floats[m]);
}

std::vector<double> ExactRangeLaw::conditional_range_given_endpoint(VertexId y) const {
    const double py = endpoint_prob(y);
    RWRANGE_REQUIRE(py > 0.0, NoReturnMass,
                    "endpoint " + std::to_string(y) + " has zero mass at the horizon");
    std::vector<double> cond(horizon + 1, 0.0);
    for (std::uint32_t r = 1; r <= horizon; ++r) cond[r] = prob(r, y) / py;
    return cond;
}

bool ExactRangeLaw::mass_is_exact() const {
    if (!exact) return false;
    u128 total = 0;
    for (u128 v : numerators) total += v;
    return total == denominator;
}

std::string uint128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace rwrange
