#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rwrange/graph.hpp"
#include "rwrange/resistance.hpp"
#include "rwrange/stats.hpp"
#include "rwrange/trees.hpp"

namespace rwrange {

struct UniformityRow {
    std::uint32_t n{0};
    double gap_or_proxy{0.0};  // certified: sup_x (rho(x,n_ref) - rho(x,n));
                               // recurrent proxy: inf_x rho(x,n)
    double analytic_bound{0.0}; // Lemma-style width bound; NaN when none applies
    double enclosure_width{0.0};
};

struct UniformityReport {
    std::string family;
    bool certified{false};
    std::vector<std::uint32_t> sample; // layers (certified) or vertex ids
    std::vector<UniformityRow> rows;
    std::string verdict;
};

/// Certified sweep on a banded-degree layered tree: for each n the measured
/// convergence gap sup over the sample of rho(x, n_max) - rho(x, n), overlaid
/// with the analytic geometric bound.
UniformityReport uniformity_sweep(const LayeredTree& tree, std::span<const std::uint32_t> layers,
                                  std::uint32_t n_max,
                                  std::optional<DegreeBand> band = std::nullopt);

/// Diagnostic sweep on an explicit graph: inf over the sample of rho(x,n) as
/// the uniform-divergence proxy (recurrent families), tabulated on the grid.
UniformityReport uniformity_sweep(const WeightedGraph& g, std::span<const VertexId> sample,
                                  std::span<const std::uint32_t> n_grid);

struct RecurrenceReport {
    std::vector<VertexId> sample;
    // partial_sums[i][k] = sum_{j<=k} p_j(x_i, x_i), k = 0..n
    std::vector<std::vector<double>> partial_sums;
    std::vector<double> infimum; // per k, over the sample

    struct RhoCheck {
        VertexId x{0};
        std::uint32_t n{0};
        double rho{0.0};
        double partial_sum{0.0}; // sum_{0 <= k < n} p_k(x,x)
        bool holds{false};       // rho >= partial_sum (small float slack)
    };
    std::vector<RhoCheck> rho_checks;
};

/// Exact partial sums of the on-diagonal kernel plus the resistance
/// comparison rho(x,n) >= sum_{k<n} p_k(x,x) at the requested depths.
RecurrenceReport recurrence_diagnostic(const WeightedGraph& g, std::span<const VertexId> sample,
                                       std::uint32_t n,
                                       std::span<const std::uint32_t> rho_check_depths);

struct UcAlphaFit {
    PowerLawFit fit;
    double alpha_hat{0.0};
    double c_hat{0.0};
    std::vector<std::pair<double, double>> points; // (k, sup_x p_k(x,x)), even k
};

/// Log-log fit of the even-step on-diagonal decay sup_x p_k(x,x) ~ C k^{-alpha/2}.
UcAlphaFit uc_alpha_fit(const WeightedGraph& g, std::span<const VertexId> sample,
                        std::uint32_t k_min, std::uint32_t k_max, std::uint32_t k_step = 2);

/// Fit injected (k, value) points (synthetic slope recovery).
UcAlphaFit fit_alpha_points(std::span<const std::pair<double, double>> points);

} // namespace rwrange
