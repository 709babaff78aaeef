#include "rwrange/walk.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rwrange/linsys.hpp"

namespace rwrange {

void require_clean_ball(const WeightedGraph& g, VertexId x, std::uint32_t radius) {
    if (g.artificial_boundary().empty()) return;
    Ball b = ball(g, x, radius);
    for (VertexId v : b.members) {
        RWRANGE_REQUIRE(!g.is_artificial(v), BallCoversGraph,
                        "B(x," + std::to_string(radius) +
                            ") reaches the truncation boundary; enlarge the truncation");
    }
}

namespace {

// One exact step of the (possibly killed) walk. Mass moving into a killed
// vertex is dropped and returned.
double step_mass(const WeightedGraph& g, const std::vector<double>& src, std::vector<double>& dst,
                 const std::vector<std::uint8_t>& killed) {
    std::fill(dst.begin(), dst.end(), 0.0);
    double lost = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const double m = src[v];
        if (m == 0.0) continue;
        const double inv_mu = 1.0 / g.vertex_weight(v);
        auto nbrs = g.neighbors(v);
        auto ws = g.neighbor_weights(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const double flow = m * ws[i] * inv_mu;
            if (!killed.empty() && killed[nbrs[i]]) {
                lost += flow;
            } else {
                dst[nbrs[i]] += flow;
            }
        }
    }
    return lost;
}

} // namespace

DistributionVector evolve_distribution(const WeightedGraph& g, VertexId x, std::uint32_t k,
                                       std::span<const VertexId> killed) {
    g.check_vertex(x);
    require_clean_ball(g, x, k == 0 ? 1 : k);

    std::vector<std::uint8_t> kill_mask;
    if (!killed.empty()) {
        kill_mask.assign(g.vertex_count(), 0);
        for (VertexId v : killed) {
            g.check_vertex(v);
            kill_mask[v] = 1;
        }
        RWRANGE_REQUIRE(!kill_mask[x], SpecInvariantViolated,
                        "start vertex lies in the kill set");
    }

    DistributionVector d;
    d.steps = k;
    d.mass.assign(g.vertex_count(), 0.0);
    d.mass[x] = 1.0;
    std::vector<double> scratch(g.vertex_count(), 0.0);
    for (std::uint32_t s = 0; s < k; ++s) {
        d.killed_mass += step_mass(g, d.mass, scratch, kill_mask);
        d.mass.swap(scratch);
    }
    return d;
}

TailTable return_tail(const WeightedGraph& g, VertexId x, std::uint32_t m_max) {
    g.check_vertex(x);
    require_clean_ball(g, x, m_max + 1);

    TailTable table;
    table.base = x;
    table.survival.assign(m_max + 1, 1.0);
    if (m_max == 0) return table;

    // After the first step the walk sits on the neighbors of x; from there
    // the evolution is killed at x and the surviving mass is P(T_x^+ > m).
    std::vector<double> mass(g.vertex_count(), 0.0);
    {
        auto nbrs = g.neighbors(x);
        auto ws = g.neighbor_weights(x);
        const double inv_mu = 1.0 / g.vertex_weight(x);
        for (std::size_t i = 0; i < nbrs.size(); ++i) mass[nbrs[i]] = ws[i] * inv_mu;
    }
    std::vector<std::uint8_t> kill_mask(g.vertex_count(), 0);
    kill_mask[x] = 1;

    std::vector<double> scratch(g.vertex_count(), 0.0);
    double alive = 1.0;
    table.survival[1] = 1.0; // no self-loops: S_1 != x
    for (std::uint32_t m = 2; m <= m_max; ++m) {
        alive -= step_mass(g, mass, scratch, kill_mask);
        mass.swap(scratch);
        table.survival[m] = alive;
    }
    return table;
}

double heat_kernel_diag(const WeightedGraph& g, VertexId x, std::uint32_t k) {
    DistributionVector d = evolve_distribution(g, x, k);
    return d.mass[x] / g.vertex_weight(x);
}

double escape_before_exit(const WeightedGraph& g, VertexId x, std::uint32_t n) {
    Ball b = ball(g, x, n);
    require_clean_ball(g, x, n);
    RWRANGE_REQUIRE(!b.boundary.empty(), BallCoversGraph,
                    "B(x," + std::to_string(n) + ") covers the whole graph");

    // h(y) = P_y(exit the ball before hitting x); h = 0 at x, h = 1 outside.
    std::vector<VertexId> interior;
    interior.reserve(b.members.size());
    for (VertexId v : b.members)
        if (v != x) interior.push_back(v);

    std::vector<double> h(g.vertex_count(), 0.0);
    if (!interior.empty()) {
        KilledLaplacian sys(g, interior);
        std::vector<double> rhs(interior.size(), 0.0);
        for (std::size_t i = 0; i < interior.size(); ++i) {
            const VertexId v = interior[i];
            auto nbrs = g.neighbors(v);
            auto ws = g.neighbor_weights(v);
            for (std::size_t j = 0; j < nbrs.size(); ++j) {
                if (nbrs[j] != x && !sys.contains(nbrs[j])) rhs[i] += ws[j];
            }
        }
        std::vector<double> sol = sys.solve(rhs);
        for (std::size_t i = 0; i < interior.size(); ++i) h[interior[i]] = sol[i];
    }

    double escape = 0.0;
    {
        auto nbrs = g.neighbors(x);
        auto ws = g.neighbor_weights(x);
        const double inv_mu = 1.0 / g.vertex_weight(x);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const bool outside = std::find(b.members.begin(), b.members.end(), nbrs[i]) ==
                                 b.members.end();
            escape += ws[i] * inv_mu * (outside ? 1.0 : h[nbrs[i]]);
        }
    }
    return escape;
}

double expected_exit_time(const WeightedGraph& g, VertexId x, std::uint32_t n) {
    Ball b = ball(g, x, n);
    require_clean_ball(g, x, n);
    RWRANGE_REQUIRE(!b.boundary.empty(), BallCoversGraph,
                    "B(x," + std::to_string(n) + ") covers the whole graph");

    // (L_B t)(y) = mu_y for y in the ball, t = 0 outside.
    KilledLaplacian sys(g, b.members);
    std::vector<double> rhs(b.members.size());
    for (std::size_t i = 0; i < b.members.size(); ++i) rhs[i] = g.vertex_weight(b.members[i]);
    std::vector<double> t = sys.solve(rhs);
    return t[sys.local(x)];
}

std::vector<double> RadialChain::distance_law(std::uint32_t k) const {
    std::vector<double> cur(k + 1, 0.0), next(k + 1, 0.0);
    cur[0] = 1.0;
    for (std::uint32_t s = 0; s < k; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint32_t r = 0; r <= s; ++r) {
            const double m = cur[r];
            if (m == 0.0) continue;
            if (r == 0) {
                next[1] += m;
            } else {
                const double pin = 1.0 / tree_.degree(r);
                next[r - 1] += m * pin;
                next[r + 1] += m * (1.0 - pin);
            }
        }
        cur.swap(next);
    }
    return cur;
}

std::vector<double> RadialChain::survival_root(std::uint32_t m_max) const {
    std::vector<double> survival(m_max + 1, 1.0);
    if (m_max <= 1) return survival;
    // chain started at layer 1 (first step is outward surely), killed at 0
    std::vector<double> cur(m_max + 2, 0.0), next(m_max + 2, 0.0);
    cur[1] = 1.0;
    double alive = 1.0;
    for (std::uint32_t m = 2; m <= m_max; ++m) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::uint32_t r = 1; r <= m; ++r) {
            const double mass = cur[r];
            if (mass == 0.0) continue;
            const double pin = 1.0 / tree_.degree(r);
            if (r == 1) {
                alive -= mass * pin; // absorbed at the root
            } else {
                next[r - 1] += mass * pin;
            }
            next[r + 1] += mass * (1.0 - pin);
        }
        cur.swap(next);
        survival[m] = alive;
    }
    return survival;
}

double RadialChain::diag(std::uint32_t k) const {
    auto law = distance_law(k);
    return law[0] / tree_.degree(0);
}

namespace {

VertexId pick_neighbor(const WeightedGraph& g, VertexId v, Xoshiro256& rng) {
    auto nbrs = g.neighbors(v);
    if (g.unit_weights()) return nbrs[rng.bounded(static_cast<std::uint32_t>(nbrs.size()))];
    auto ws = g.neighbor_weights(v);
    double target = rng.uniform() * g.vertex_weight(v);
    for (std::size_t i = 0; i + 1 < nbrs.size(); ++i) {
        target -= ws[i];
        if (target < 0.0) return nbrs[i];
    }
    return nbrs.back();
}

} // namespace

std::vector<std::int64_t> simulate_graph_checkpoints(const WeightedGraph& g, VertexId start,
                                                     std::span<const std::uint64_t> checkpoints,
                                                     Xoshiro256& rng, RangeSample* final_sample) {
    g.check_vertex(start);
    RWRANGE_REQUIRE(!checkpoints.empty() && checkpoints.back() >= 1, SpecInvariantViolated,
                    "walk needs at least one step");
    const std::uint64_t n = checkpoints.back();

    std::vector<std::uint8_t> visited(g.vertex_count(), 0);
    visited[start] = 1;
    std::int64_t range = 1;
    VertexId pos = start;

    std::vector<std::int64_t> out;
    out.reserve(checkpoints.size());
    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= 1) {
        out.push_back(range);
        ++next_cp;
    }
    for (std::uint64_t step = 1; step <= n; ++step) {
        pos = pick_neighbor(g, pos, rng);
        if (!visited[pos] && step < n) {
            visited[pos] = 1;
            ++range;
        }
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == step + 1) {
            out.push_back(range);
            ++next_cp;
        }
    }
    if (final_sample) {
        final_sample->range = range;
        final_sample->final_is_start = pos == start;
        final_sample->final_distance = 0;
    }
    return out;
}

RangeSample simulate_graph(const WeightedGraph& g, VertexId start, std::uint64_t steps,
                           Xoshiro256& rng, std::span<const std::uint32_t> dist_from_start) {
    g.check_vertex(start);
    RWRANGE_REQUIRE(steps >= 1, SpecInvariantViolated, "walk needs at least one step");
    std::vector<std::uint8_t> visited(g.vertex_count(), 0);
    visited[start] = 1;
    std::int64_t range = 1;
    VertexId pos = start;
    for (std::uint64_t step = 1; step <= steps; ++step) {
        pos = pick_neighbor(g, pos, rng);
        if (!visited[pos] && step < steps) {
            visited[pos] = 1;
            ++range;
        }
    }
    RangeSample sample;
    sample.range = range;
    sample.final_vertex = pos;
    sample.final_is_start = pos == start;
    sample.final_distance = dist_from_start.empty() ? 0 : dist_from_start[pos];
    return sample;
}

namespace detail {

void parallel_for_trials(std::uint64_t trials, int jobs,
                         const std::function<void(std::uint64_t)>& body) {
    if (jobs <= 1 || trials <= 1) {
        for (std::uint64_t t = 0; t < trials; ++t) body(t);
        return;
    }
    const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), trials);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::uint64_t t = w; t < trials; t += workers) body(t);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

std::vector<RangeSample> run_graph_trials(const WeightedGraph& g, VertexId start,
                                          std::uint64_t steps, std::uint64_t trials,
                                          std::uint64_t master_seed, int jobs,
                                          std::uint64_t step_budget) {
    RWRANGE_REQUIRE(steps >= 1 && trials >= 1, SpecInvariantViolated,
                    "need steps >= 1 and trials >= 1");
    RWRANGE_REQUIRE(steps * trials <= step_budget, BudgetExceeded,
                    "trial batch of " + std::to_string(steps * trials) +
                        " steps exceeds step budget");
    auto dist = bfs_distances(g, start);
    std::vector<RangeSample> out(trials);
    detail::parallel_for_trials(trials, jobs, [&](std::uint64_t t) {
        Xoshiro256 rng = Xoshiro256::for_trial(master_seed, t);
        out[t] = simulate_graph(g, start, steps, rng, dist);
    });
    return out;
}

} // namespace rwrange
