#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rwrange/builders.hpp"
#include "rwrange/graph.hpp"
#include "rwrange/resistance.hpp"
#include "rwrange/stats.hpp"
#include "rwrange/walk.hpp"

namespace rwrange {

struct Rational {
    std::int64_t num{0};
    std::int64_t den{1};
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// g_N = (N-2)/(N-1): escape probability of the N-regular tree.
Rational g_const(std::uint32_t N);

// ---------------------------------------------------------------------------
// Monte Carlo range reports
// ---------------------------------------------------------------------------

struct TailStat {
    double threshold_ratio{0.0}; // event R_n >= n*thr (upper) or R_n <= n*thr (lower)
    bool upper{true};
    std::uint64_t count{0};
    double frequency{0.0};
    Interval wilson; // Wilson 99% interval for the frequency
};

struct RangeReport {
    std::string family;
    std::uint64_t n{0};
    std::uint64_t trials{0};
    std::uint64_t seed{0};
    double mean_ratio{0.0}; // mean of R_n/n
    MeanCi mean_ci;         // normal 99% CI for the mean
    Interval mean_wilson;   // Wilson interval on the [0,1]-bounded mean (conservative)
    std::vector<TailStat> tails;
    std::uint64_t accepted{0};  // bridge mode: trials with S_n = x
    std::uint64_t attempted{0}; // bridge mode: total trials before budget
    std::vector<RangeSample> samples; // per-trial rows, optional
};

struct McOptions {
    std::uint64_t trials{1000};
    std::uint64_t seed{1};
    int jobs{1};
    std::uint64_t step_budget{2'000'000'000ULL};
    bool keep_samples{true};
};

RangeReport expected_range_mc(const WeightedGraph& g, VertexId x, std::uint64_t n,
                              const McOptions& opt);
RangeReport expected_range_mc(const LayeredTree& tree, const TreeAddress& start, std::uint64_t n,
                              const McOptions& opt);
RangeReport expected_range_mc(const AttachedTree& tree, const TreeAddress& start, std::uint64_t n,
                              const McOptions& opt);

/// Theorem-1.2 style experiment: empirical frequencies of the two tail events
/// given the certified (or supplied) interval [1-F2, 1-F1] and epsilon.
RangeReport weak_law_experiment(const WeightedGraph& g, VertexId x, std::uint64_t n,
                                double epsilon, Interval one_minus_f, const McOptions& opt);
RangeReport weak_law_experiment(const LayeredTree& tree, const TreeAddress& start,
                                std::uint64_t n, double epsilon, Interval one_minus_f,
                                const McOptions& opt);

/// Range of the walk bridge: rejection sampling conditioned on S_n = x.
/// attempted trials stop once `opt.trials` acceptances or the step budget is
/// hit; throws NoReturnMass when parity forbids return or nothing is accepted.
RangeReport bridge_experiment(const WeightedGraph& g, VertexId x, std::uint64_t n,
                              double epsilon, double one_minus_f1, const McOptions& opt);

// ---------------------------------------------------------------------------
// Exact expected range (last-exit decomposition)
// ---------------------------------------------------------------------------

struct LastExitTable {
    VertexId base{0};
    std::uint64_t n{0};
    double expected_range{0.0};
    std::vector<double> per_step; // contribution sum_y P_x(S_i=y) P_y(T_y^+ > n-1-i)
};

/// E_x[R_n] = 1 + sum_{i<=n-2} sum_y P_x(S_i=y) P_y(T_y^+ > n-1-i), exact.
LastExitTable expected_range_exact(const WeightedGraph& g, VertexId x, std::uint64_t n,
                                   std::uint64_t work_budget = 400'000'000ULL);

// ---------------------------------------------------------------------------
// Return-tail exponent
// ---------------------------------------------------------------------------

struct TailExponentFit {
    PowerLawFit fit;
    double delta{0.0};        // -slope - 1
    double delta_stderr{0.0};
    bool delta_positive_95{false};
    std::vector<std::pair<double, double>> points; // (M, sup tail)
};

/// Fits sup_x P_x(M < T_x^+ < inf) ~ M^{-1-delta} over the sample; tails are
/// exact on the explicit graph (P(T^+ < inf) = 1 there).
TailExponentFit tail_exponent_fit(const WeightedGraph& g, std::span<const VertexId> sample,
                                  std::span<const std::uint32_t> m_grid);

/// Layered-tree variant at the root: exact radial-chain tails minus the
/// certified escape probability.
TailExponentFit tail_exponent_fit(const LayeredTree& tree,
                                  std::span<const std::uint32_t> m_grid,
                                  std::uint32_t certify_depth = 300);

/// Fit injected (M, tail) points directly (synthetic recovery checks).
TailExponentFit fit_tail_points(std::span<const std::pair<double, double>> points);

// ---------------------------------------------------------------------------
// Escape-probability bounds over vertex samples
// ---------------------------------------------------------------------------

struct FBoundsReport {
    std::vector<std::uint32_t> layers;
    std::vector<Interval> escapes; // certified per layer
    Interval one_minus_f;          // [min lo, max hi] = sampled [1-F2, 1-F1]
};

FBoundsReport f_bounds(const LayeredTree& tree, std::span<const std::uint32_t> layers,
                       std::uint32_t n, std::optional<DegreeBand> band = std::nullopt);

// ---------------------------------------------------------------------------
// Fluctuation construction (alternating radii search)
// ---------------------------------------------------------------------------

struct FluctuationParams {
    std::uint32_t n1{4};
    std::uint32_t n2{8};
    std::uint32_t k1{8};
    std::uint32_t stages{4};
    double slack{0.05};
    std::vector<double> slack_schedule; // optional per-stage override
    std::uint64_t trials{2000};
    std::uint64_t seed{1};
    std::uint64_t radius_budget{100'000};
    std::uint64_t step_budget{4'000'000'000ULL};
    int jobs{1};
};

struct FluctuationAttempt {
    std::uint32_t radius{0};
    double estimate{0.0};
    double ci_halfwidth{0.0};
    bool cleared{false};
};

struct FluctuationStage {
    std::uint32_t stage{0};        // 1-based search stage
    std::uint32_t radius_index{0}; // index i of the appended k_i (k_1 is given)
    bool lower_stage{false};       // true: must clear estimate >= g_{N2} - slack
    double slack{0.0};
    double target{0.0};
    std::uint32_t radius{0};       // accepted k
    double estimate{0.0};
    MeanCi ci;
    std::vector<FluctuationAttempt> attempts;
};

struct FluctuationReport {
    FluctuationParams params;
    double g_n1{0.0};
    double g_n2{0.0};
    std::vector<FluctuationStage> stages;
    AlternatingTreeSpec final_spec;
};

/// Realizes the alternating radii constructively: each stage doubles the
/// candidate horizon from 2*k_prev+1 on the tree frozen at the current spec
/// (outermost band extended to infinity) until the Monte Carlo estimate of
/// E_o[R_k]/k clears the stage target with the CI on the conservative side.
FluctuationReport fluctuation_search(const FluctuationParams& params);

} // namespace rwrange
