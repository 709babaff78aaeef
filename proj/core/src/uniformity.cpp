#include "rwrange/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rwrange/walk.hpp"

namespace rwrange {

UniformityReport uniformity_sweep(const LayeredTree& tree, std::span<const std::uint32_t> layers,
                                  std::uint32_t n_max, std::optional<DegreeBand> band) {
    RWRANGE_REQUIRE(!layers.empty(), SpecInvariantViolated, "empty layer sample");
    RWRANGE_REQUIRE(n_max >= 2, SpecInvariantViolated, "need n_max >= 2");

    const DegreeBand b = band.value_or(DegreeBand{tree.min_degree(), tree.max_degree()});
    b.validate();

    UniformityReport report;
    report.family = tree.label();
    report.certified = true;
    report.sample.assign(layers.begin(), layers.end());

    // per-layer profiles share the deepest table
    std::vector<ResistanceProfile> profiles;
    profiles.reserve(layers.size());
    for (std::uint32_t layer : layers)
        profiles.push_back(certified_profile(tree, layer, n_max, b));

    for (std::uint32_t n = 1; n <= n_max; ++n) {
        UniformityRow row;
        row.n = n;
        row.analytic_bound = enclosure_width_bound(b, n);
        double worst_gap = 0.0;
        double worst_width = 0.0;
        for (const ResistanceProfile& p : profiles) {
            // measured convergence toward the deepest computed resistance
            worst_gap = std::max(worst_gap, p.rho[n_max - 1] - p.rho[n - 1]);
            worst_width = std::max(worst_width, p.hi[n - 1] - p.lo[n - 1]);
        }
        row.gap_or_proxy = worst_gap;
        row.enclosure_width = worst_width;
        report.rows.push_back(row);
    }
    report.verdict = "certified: geometric uniform convergence on the degree band [" +
                     std::to_string(b.n1) + "," + std::to_string(b.n2) + "]";
    return report;
}

UniformityReport uniformity_sweep(const WeightedGraph& g, std::span<const VertexId> sample,
                                  std::span<const std::uint32_t> n_grid) {
    RWRANGE_REQUIRE(!sample.empty(), SpecInvariantViolated, "empty vertex sample");
    RWRANGE_REQUIRE(!n_grid.empty(), SpecInvariantViolated, "empty n grid");

    UniformityReport report;
    report.family = "explicit";
    report.certified = false;
    report.sample.assign(sample.begin(), sample.end());

    for (std::uint32_t n : n_grid) {
        UniformityRow row;
        row.n = n;
        row.analytic_bound = std::numeric_limits<double>::quiet_NaN();
        row.enclosure_width = std::numeric_limits<double>::quiet_NaN();
        double proxy = std::numeric_limits<double>::infinity();
        for (VertexId x : sample) proxy = std::min(proxy, rho_n(g, x, n));
        row.gap_or_proxy = proxy;
        report.rows.push_back(row);
    }
    report.verdict = "diagnostic only: sampled inf rho(x,n) (divergence proxy)";
    return report;
}

RecurrenceReport recurrence_diagnostic(const WeightedGraph& g, std::span<const VertexId> sample,
                                       std::uint32_t n,
                                       std::span<const std::uint32_t> rho_check_depths) {
    RWRANGE_REQUIRE(!sample.empty(), SpecInvariantViolated, "empty vertex sample");

    RecurrenceReport report;
    report.sample.assign(sample.begin(), sample.end());
    report.infimum.assign(n + 1, std::numeric_limits<double>::infinity());

    for (VertexId x : sample) {
        require_clean_ball(g, x, n + 1);
        // one evolution pass; partial sums accumulate the diagonal
        std::vector<double> sums(n + 1, 0.0);
        DistributionVector d = evolve_distribution(g, x, 0);
        const double inv_mu = 1.0 / g.vertex_weight(x);
        double acc = 0.0;
        std::vector<double> scratch(g.vertex_count(), 0.0);
        for (std::uint32_t k = 0; k <= n; ++k) {
            acc += d.mass[x] * inv_mu;
            sums[k] = acc;
            if (k == n) break;
            std::fill(scratch.begin(), scratch.end(), 0.0);
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                const double m = d.mass[v];
                if (m == 0.0) continue;
                const double inv = 1.0 / g.vertex_weight(v);
                auto nbrs = g.neighbors(v);
                auto ws = g.neighbor_weights(v);
                for (std::size_t i = 0; i < nbrs.size(); ++i)
                    scratch[nbrs[i]] += m * ws[i] * inv;
            }
            d.mass.swap(scratch);
        }
        for (std::uint32_t k = 0; k <= n; ++k)
            report.infimum[k] = std::min(report.infimum[k], sums[k]);

        for (std::uint32_t depth : rho_check_depths) {
            RWRANGE_REQUIRE(depth >= 1 && depth <= n, SpecInvariantViolated,
                            "rho check depth out of range");
            RecurrenceReport::RhoCheck check;
            check.x = x;
            check.n = depth;
            check.rho = rho_n(g, x, depth);
            check.partial_sum = depth >= 1 ? sums[depth - 1] : 0.0;
            check.holds = check.rho >= check.partial_sum - 1e-9;
            report.rho_checks.push_back(check);
        }
        report.partial_sums.push_back(std::move(sums));
    }
    return report;
}

namespace {

UcAlphaFit alpha_from_points(std::vector<std::pair<double, double>> points) {
    UcAlphaFit out;
    out.points = std::move(points);
    out.fit = fit_power_law(out.points);
    out.alpha_hat = -2.0 * out.fit.slope;
    out.c_hat = std::exp(out.fit.intercept);
    return out;
}

} // namespace

UcAlphaFit fit_alpha_points(std::span<const std::pair<double, double>> points) {
    return alpha_from_points({points.begin(), points.end()});
}

UcAlphaFit uc_alpha_fit(const WeightedGraph& g, std::span<const VertexId> sample,
                        std::uint32_t k_min, std::uint32_t k_max, std::uint32_t k_step) {
    RWRANGE_REQUIRE(!sample.empty(), SpecInvariantViolated, "empty vertex sample");
    RWRANGE_REQUIRE(k_min >= 2 && k_min % 2 == 0 && k_step % 2 == 0, InsufficientGrid,
                    "grid must use even steps (odd diagonals vanish on bipartite graphs)");
    RWRANGE_REQUIRE(k_max >= k_min + 2 * k_step, InsufficientGrid, "grid too short");

    // one evolution per sampled vertex, reading the diagonal at grid points
    std::vector<std::pair<double, double>> points;
    for (std::uint32_t k = k_min; k <= k_max; k += k_step)
        points.emplace_back(static_cast<double>(k), 0.0);

    for (VertexId x : sample) {
        require_clean_ball(g, x, k_max + 1);
        DistributionVector d = evolve_distribution(g, x, 0);
        const double inv_mu = 1.0 / g.vertex_weight(x);
        std::vector<double> scratch(g.vertex_count(), 0.0);
        std::size_t grid_pos = 0;
        for (std::uint32_t k = 0; k <= k_max && grid_pos < points.size(); ++k) {
            if (k == static_cast<std::uint32_t>(points[grid_pos].first)) {
                points[grid_pos].second = std::max(points[grid_pos].second, d.mass[x] * inv_mu);
                ++grid_pos;
            }
            if (k == k_max) break;
            std::fill(scratch.begin(), scratch.end(), 0.0);
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                const double m = d.mass[v];
                if (m == 0.0) continue;
                const double inv = 1.0 / g.vertex_weight(v);
                auto nbrs = g.neighbors(v);
                auto ws = g.neighbor_weights(v);
                for (std::size_t i = 0; i < nbrs.size(); ++i)
                    scratch[nbrs[i]] += m * ws[i] * inv;
            }
            d.mass.swap(scratch);
        }
    }
    return alpha_from_points(std::move(points));
}

} // namespace rwrange
