#include "rwrange/range_laws.hpp"

#include <algorithm>
#include <cmath>

namespace rwrange {

Rational g_const(std::uint32_t N) {
    RWRANGE_REQUIRE(N >= 3, DegreeTooSmall, "g_N defined for N >= 3");
    return Rational{static_cast<std::int64_t>(N) - 2, static_cast<std::int64_t>(N) - 1};
}

namespace {

RangeReport report_from_samples(std::vector<RangeSample> samples, std::uint64_t n,
                                std::uint64_t seed, const std::string& family,
                                bool keep_samples) {
    RangeReport report;
    report.family = family;
    report.n = n;
    report.trials = samples.size();
    report.seed = seed;

    std::vector<double> ratios;
    ratios.reserve(samples.size());
    double sum = 0.0;
    for (const RangeSample& s : samples) {
        const double ratio = static_cast<double>(s.range) / static_cast<double>(n);
        ratios.push_back(ratio);
        sum += ratio;
    }
    report.mean_ci = mean_ci(ratios);
    report.mean_ratio = report.mean_ci.mean;
    report.mean_wilson = wilson_interval(sum, samples.size());
    if (keep_samples) report.samples = std::move(samples);
    return report;
}

void add_tail(RangeReport& report, std::span<const RangeSample> samples, double threshold_ratio,
              bool upper) {
    TailStat tail;
    tail.threshold_ratio = threshold_ratio;
    tail.upper = upper;
    const double threshold = threshold_ratio * static_cast<double>(report.n);
    for (const RangeSample& s : samples) {
        const double r = static_cast<double>(s.range);
        if (upper ? r >= threshold : r <= threshold) ++tail.count;
    }
    const std::uint64_t total = samples.size();
    tail.frequency = total ? static_cast<double>(tail.count) / static_cast<double>(total) : 0.0;
    tail.wilson = total ? wilson_interval(static_cast<double>(tail.count), total) : Interval{};
    report.tails.push_back(tail);
}

void check_f_interval(Interval one_minus_f) {
    RWRANGE_REQUIRE(0.0 <= one_minus_f.lo && one_minus_f.lo <= one_minus_f.hi &&
                        one_minus_f.hi <= 1.0,
                    InvalidInterval, "[1-F2, 1-F1] must be an interval inside [0,1]");
}

} // namespace

RangeReport expected_range_mc(const WeightedGraph& g, VertexId x, std::uint64_t n,
                              const McOptions& opt) {
    RWRANGE_REQUIRE(opt.trials >= 100, SpecInvariantViolated, "need at least 100 trials");
    auto samples = run_graph_trials(g, x, n, opt.trials, opt.seed, opt.jobs, opt.step_budget);
    return report_from_samples(std::move(samples), n, opt.seed, "graph", opt.keep_samples);
}

RangeReport expected_range_mc(const LayeredTree& tree, const TreeAddress& start, std::uint64_t n,
                              const McOptions& opt) {
    RWRANGE_REQUIRE(opt.trials >= 100, SpecInvariantViolated, "need at least 100 trials");
    auto samples =
        run_tree_trials(tree, start, n, opt.trials, opt.seed, opt.jobs, opt.step_budget);
    return report_from_samples(std::move(samples), n, opt.seed, tree.label(), opt.keep_samples);
}

RangeReport expected_range_mc(const AttachedTree& tree, const TreeAddress& start, std::uint64_t n,
                              const McOptions& opt) {
    RWRANGE_REQUIRE(opt.trials >= 100, SpecInvariantViolated, "need at least 100 trials");
    auto samples =
        run_tree_trials(tree, start, n, opt.trials, opt.seed, opt.jobs, opt.step_budget);
    return report_from_samples(std::move(samples), n, opt.seed, tree.label(), opt.keep_samples);
}

namespace {

void apply_weak_law_tails(RangeReport& report, std::span<const RangeSample> samples,
                          double epsilon, Interval one_minus_f) {
    check_f_interval(one_minus_f);
    RWRANGE_REQUIRE(epsilon > 0.0, InvalidInterval, "epsilon must be positive");
    // upper tail: R_n >= n (1 - F1 + eps); lower tail: R_n <= n (1 - F2 - eps)
    add_tail(report, samples, one_minus_f.hi + epsilon, true);
    add_tail(report, samples, one_minus_f.lo - epsilon, false);
}

} // namespace

RangeReport weak_law_experiment(const WeightedGraph& g, VertexId x, std::uint64_t n,
                                double epsilon, Interval one_minus_f, const McOptions& opt) {
    RangeReport report = expected_range_mc(g, x, n, opt);
    auto samples = std::span<const RangeSample>(report.samples);
    RWRANGE_REQUIRE(!samples.empty(), SpecInvariantViolated,
                    "weak-law experiment needs keep_samples");
    apply_weak_law_tails(report, samples, epsilon, one_minus_f);
    return report;
}

RangeReport weak_law_experiment(const LayeredTree& tree, const TreeAddress& start,
                                std::uint64_t n, double epsilon, Interval one_minus_f,
                                const McOptions& opt) {
    RangeReport report = expected_range_mc(tree, start, n, opt);
    auto samples = std::span<const RangeSample>(report.samples);
    RWRANGE_REQUIRE(!samples.empty(), SpecInvariantViolated,
                    "weak-law experiment needs keep_samples");
    apply_weak_law_tails(report, samples, epsilon, one_minus_f);
    return report;
}

RangeReport bridge_experiment(const WeightedGraph& g, VertexId x, std::uint64_t n,
                              double epsilon, double one_minus_f1, const McOptions& opt) {
    g.check_vertex(x);
    RWRANGE_REQUIRE(n >= 1, SpecInvariantViolated, "horizon must be >= 1");
    RWRANGE_REQUIRE(!(is_bipartite(g) && n % 2 == 1), NoReturnMass,
                    "bipartite parity: P_x(S_n = x) = 0 for odd n");

    // rejection sampling, sequential so the attempt count is schedule-free
    const std::uint64_t step_budget = std::min<std::uint64_t>(opt.step_budget, 10'000'000ULL);
    std::vector<RangeSample> accepted;
    std::uint64_t attempts = 0;
    std::uint64_t steps_used = 0;
    auto dist = bfs_distances(g, x);
    while (accepted.size() < opt.trials && steps_used + n <= step_budget) {
        Xoshiro256 rng = Xoshiro256::for_trial(opt.seed, attempts);
        RangeSample s = simulate_graph(g, x, n, rng, dist);
        ++attempts;
        steps_used += n;
        if (s.final_is_start) accepted.push_back(s);
    }
    RWRANGE_REQUIRE(!accepted.empty(), NoReturnMass,
                    "no bridge acceptances within the step budget");

    const std::uint64_t accepted_count = accepted.size();
    RangeReport report =
        report_from_samples(std::move(accepted), n, opt.seed, "bridge", opt.keep_samples);
    report.trials = opt.trials;
    report.accepted = accepted_count;
    report.attempted = attempts;
    std::span<const RangeSample> samples(report.samples);
    if (!samples.empty()) add_tail(report, samples, one_minus_f1 + epsilon, true);
    return report;
}

LastExitTable expected_range_exact(const WeightedGraph& g, VertexId x, std::uint64_t n,
                                   std::uint64_t work_budget) {
    g.check_vertex(x);
    RWRANGE_REQUIRE(n >= 1, SpecInvariantViolated, "horizon must be >= 1");
    require_clean_ball(g, x, static_cast<std::uint32_t>(n) + 1);

    LastExitTable table;
    table.base = x;
    table.n = n;
    table.expected_range = 1.0;
    if (n == 1) return table;

    const std::uint64_t work = static_cast<std::uint64_t>(g.vertex_count()) * n *
                               std::max<std::uint64_t>(1, g.edge_count());
    RWRANGE_REQUIRE(work <= work_budget, BudgetExceeded,
                    "exact range computation too large: " + std::to_string(work));

    // tails[y][m] = P_y(T_y^+ > m), computed lazily per visited vertex
    std::vector<TailTable> tails(g.vertex_count());
    std::vector<std::uint8_t> have_tail(g.vertex_count(), 0);
    const std::uint32_t m_max = static_cast<std::uint32_t>(n - 1);

    DistributionVector dist = evolve_distribution(g, x, 0);
    table.per_step.reserve(n - 1);
    std::vector<double> scratch(g.vertex_count(), 0.0);
    for (std::uint64_t i = 0; i + 2 <= n; ++i) {
        const std::uint32_t horizon = static_cast<std::uint32_t>(n - 1 - i);
        double contribution = 0.0;
        for (VertexId y = 0; y < g.vertex_count(); ++y) {
            const double mass = dist.mass[y];
            if (mass == 0.0) continue;
            if (!have_tail[y]) {
                tails[y] = return_tail(g, y, m_max);
                have_tail[y] = 1;
            }
            contribution += mass * tails[y].survival[horizon];
        }
        table.per_step.push_back(contribution);
        table.expected_range += contribution;
        // advance the distribution one step
        std::fill(scratch.begin(), scratch.end(), 0.0);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            const double m = dist.mass[v];
            if (m == 0.0) continue;
            const double inv_mu = 1.0 / g.vertex_weight(v);
            auto nbrs = g.neighbors(v);
            auto ws = g.neighbor_weights(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k) scratch[nbrs[k]] += m * ws[k] * inv_mu;
        }
        dist.mass.swap(scratch);
        dist.steps++;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Tail exponents
// ---------------------------------------------------------------------------

namespace {

TailExponentFit fit_from_points(std::vector<std::pair<double, double>> points) {
    TailExponentFit out;
    out.points = std::move(points);
    out.fit = fit_power_law(out.points);
    out.delta = -out.fit.slope - 1.0;
    out.delta_stderr = out.fit.slope_stderr;
    out.delta_positive_95 = out.delta - kZ95 * out.delta_stderr > 0.0;
    return out;
}

} // namespace

TailExponentFit fit_tail_points(std::span<const std::pair<double, double>> points) {
    return fit_from_points({points.begin(), points.end()});
}

TailExponentFit tail_exponent_fit(const WeightedGraph& g, std::span<const VertexId> sample,
                                  std::span<const std::uint32_t> m_grid) {
    RWRANGE_REQUIRE(!sample.empty(), SpecInvariantViolated, "empty vertex sample");
    RWRANGE_REQUIRE(m_grid.size() >= 3, InsufficientGrid, "need at least 3 grid points");
    std::uint32_t m_max = 0;
    for (std::uint32_t m : m_grid) m_max = std::max(m_max, m);

    std::vector<std::pair<double, double>> points;
    std::vector<TailTable> tails;
    tails.reserve(sample.size());
    for (VertexId y : sample) tails.push_back(return_tail(g, y, m_max));
    for (std::uint32_t m : m_grid) {
        double sup = 0.0;
        // finite graph: P(T^+ < inf) = 1, so the finite-return tail is the
        // plain survival probability
        for (const TailTable& t : tails) sup = std::max(sup, t.survival[m]);
        points.emplace_back(static_cast<double>(m), sup);
    }
    return fit_from_points(std::move(points));
}

TailExponentFit tail_exponent_fit(const LayeredTree& tree,
                                  std::span<const std::uint32_t> m_grid,
                                  std::uint32_t certify_depth) {
    RWRANGE_REQUIRE(m_grid.size() >= 3, InsufficientGrid, "need at least 3 grid points");
    std::uint32_t m_max = 0;
    for (std::uint32_t m : m_grid) m_max = std::max(m_max, m);

    const EscapeProbability esc = escape_probability(tree, 0, certify_depth);
    const double escape = 0.5 * (esc.interval.lo + esc.interval.hi);
    const auto survival = radial_chain(tree).survival_root(m_max);

    std::vector<std::pair<double, double>> points;
    for (std::uint32_t m : m_grid) {
        const double tail = std::max(survival[m] - escape, 1e-300);
        points.emplace_back(static_cast<double>(m), tail);
    }
    return fit_from_points(std::move(points));
}

FBoundsReport f_bounds(const LayeredTree& tree, std::span<const std::uint32_t> layers,
                       std::uint32_t n, std::optional<DegreeBand> band) {
    RWRANGE_REQUIRE(!layers.empty(), SpecInvariantViolated, "empty layer sample");
    FBoundsReport report;
    report.one_minus_f = {1.0, 0.0};
    for (std::uint32_t layer : layers) {
        const EscapeProbability esc = escape_probability(tree, layer, n, band);
        report.layers.push_back(layer);
        report.escapes.push_back(esc.interval);
        report.one_minus_f.lo = std::min(report.one_minus_f.lo, esc.interval.lo);
        report.one_minus_f.hi = std::max(report.one_minus_f.hi, esc.interval.hi);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Fluctuation search
// ---------------------------------------------------------------------------

FluctuationReport fluctuation_search(const FluctuationParams& params) {
    RWRANGE_REQUIRE(params.stages >= 1, SpecInvariantViolated, "need at least one stage");
    RWRANGE_REQUIRE(params.trials >= 100, SpecInvariantViolated, "need at least 100 trials");
    if (!params.slack_schedule.empty()) {
        RWRANGE_REQUIRE(params.slack_schedule.size() >= params.stages, SpecInvariantViolated,
                        "slack schedule shorter than stage count");
        for (double s : params.slack_schedule)
            RWRANGE_REQUIRE(s > 0.0, SpecInvariantViolated, "slack must be positive");
    } else {
        RWRANGE_REQUIRE(params.slack > 0.0, SpecInvariantViolated, "slack must be positive");
    }

    FluctuationReport report;
    report.params = params;
    report.g_n1 = g_const(params.n1).value();
    report.g_n2 = g_const(params.n2).value();

    AlternatingTreeSpec spec;
    spec.n1 = params.n1;
    spec.n2 = params.n2;
    spec.radii = {params.k1};
    spec.validate();

    std::uint64_t candidate_ordinal = 0;
    for (std::uint32_t stage = 1; stage <= params.stages; ++stage) {
        const std::uint32_t radius_index = static_cast<std::uint32_t>(spec.radii.size()) + 1;
        // The outermost (infinite) band of the frozen tree is N2 after an
        // odd radius count, N1 after an even one; that band sets the target.
        const bool lower_stage = radius_index % 2 == 0;
        const double slack = params.slack_schedule.empty() ? params.slack
                                                           : params.slack_schedule[stage - 1];
        const double target =
            lower_stage ? report.g_n2 - slack : report.g_n1 + slack;

        const LayeredTree frozen = LayeredTree::alternating(spec);

        FluctuationStage record;
        record.stage = stage;
        record.radius_index = radius_index;
        record.lower_stage = lower_stage;
        record.slack = slack;
        record.target = target;

        bool cleared = false;
        std::uint64_t candidate = 2ULL * spec.radii.back() + 1;
        while (!cleared) {
            RWRANGE_REQUIRE(candidate <= params.radius_budget, BudgetExceeded,
                            "stage " + std::to_string(stage) + " exceeded the radius budget at k=" +
                                std::to_string(candidate));
            const std::uint64_t stage_seed = mix64(params.seed, ++candidate_ordinal);
            auto samples = run_tree_trials(frozen, {}, candidate, params.trials, stage_seed,
                                           params.jobs, params.step_budget);
            std::vector<double> ratios;
            ratios.reserve(samples.size());
            for (const RangeSample& s : samples)
                ratios.push_back(static_cast<double>(s.range) / static_cast<double>(candidate));
            const MeanCi ci = mean_ci(ratios);

            FluctuationAttempt attempt;
            attempt.radius = static_cast<std::uint32_t>(candidate);
            attempt.estimate = ci.mean;
            attempt.ci_halfwidth = ci.halfwidth;
            attempt.cleared = lower_stage ? (ci.mean - ci.halfwidth >= target)
                                          : (ci.mean + ci.halfwidth <= target);
            record.attempts.push_back(attempt);

            if (attempt.cleared) {
                cleared = true;
                record.radius = attempt.radius;
                record.estimate = ci.mean;
                record.ci = ci;
                spec.radii.push_back(attempt.radius);
                spec.validate();
            } else {
                candidate *= 2;
            }
        }
        report.stages.push_back(std::move(record));
    }
    report.final_spec = spec;
    return report;
}

} // namespace rwrange
