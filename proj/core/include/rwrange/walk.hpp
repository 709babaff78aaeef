#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rwrange/graph.hpp"
#include "rwrange/rng.hpp"
#include "rwrange/stats.hpp"
#include "rwrange/trees.hpp"

namespace rwrange {

/// Throws BallCoversGraph unless every vertex at distance < radius from x
/// has a complete neighbor list (no artificial truncation boundary inside).
void require_clean_ball(const WeightedGraph& g, VertexId x, std::uint32_t radius);

// ---------------------------------------------------------------------------
// Exact distribution evolution
// ---------------------------------------------------------------------------

/// Mass vector of the walk after a fixed number of steps. With a kill set,
/// mass stepping into the set is removed and accounted in killed_mass, which
/// yields the killed kernels p_k^B.
struct DistributionVector {
    std::uint32_t steps{0};
    std::vector<double> mass; // indexed by vertex id
    double killed_mass{0.0};

    double total() const {
        double s = 0.0;
        for (double v : mass) s += v;
        return s;
    }
};

DistributionVector evolve_distribution(const WeightedGraph& g, VertexId x, std::uint32_t k,
                                       std::span<const VertexId> killed = {});

/// Return-time tail P_x(T_x^+ > m) for m = 0..m_max (exact, absorbed
/// evolution). survival[0] = survival[1] = 1 on simple graphs.
struct TailTable {
    VertexId base{0};
    std::vector<double> survival;

    /// Bounds on P_x(m < T_x^+ < inf) given an enclosure of the escape
    /// probability P_x(T_x^+ = inf).
    Interval finite_return_bounds(std::size_t m, Interval escape) const {
        double lo = survival.at(m) - escape.hi;
        double hi = survival.at(m) - escape.lo;
        if (lo < 0.0) lo = 0.0;
        if (hi < 0.0) hi = 0.0;
        return {lo, hi};
    }
};

TailTable return_tail(const WeightedGraph& g, VertexId x, std::uint32_t m_max);

/// p_k(x,x) = P_x(S_k = x)/mu_x on the built graph.
double heat_kernel_diag(const WeightedGraph& g, VertexId x, std::uint32_t k);

/// P_x(T_x^+ > T_{B(x,n)^c}): leave the ball before returning to x.
/// Satisfies mu_x * escape_before_exit = rho(x,n)^{-1}.
double escape_before_exit(const WeightedGraph& g, VertexId x, std::uint32_t n);

/// E_x[T_{B(x,n)^c}], exact via the absorbing linear system.
double expected_exit_time(const WeightedGraph& g, VertexId x, std::uint32_t n);

// ---------------------------------------------------------------------------
// Radial chain on layered trees
// ---------------------------------------------------------------------------

/// Birth-death chain of the distance from the root on a layered tree:
/// from layer r > 0 the walk steps inward with probability 1/deg(r),
/// outward otherwise; from the root it steps outward surely.
class RadialChain {
public:
    explicit RadialChain(LayeredTree tree) : tree_(std::move(tree)) {}

    double inward_probability(std::uint32_t layer) const {
        return layer == 0 ? 0.0 : 1.0 / tree_.degree(layer);
    }

    /// Law of d(o, S_k): entry r is P_o(d(o,S_k) = r), r = 0..k.
    std::vector<double> distance_law(std::uint32_t k) const;

    /// P_o(T_o^+ > m) for m = 0..m_max.
    std::vector<double> survival_root(std::uint32_t m_max) const;

    /// p_k(o,o) on the tree.
    double diag(std::uint32_t k) const;

    const LayeredTree& tree() const { return tree_; }

private:
    LayeredTree tree_;
};

inline RadialChain radial_chain(const LayeredTree& tree) { return RadialChain(tree); }

// ---------------------------------------------------------------------------
// Trajectory simulation
// ---------------------------------------------------------------------------

struct RangeSample {
    std::int64_t range{0};          // R_n = |{S_0..S_{n-1}}|
    std::uint32_t final_distance{0}; // d(start, S_n)
    VertexId final_vertex{0};        // S_n on explicit graphs
    bool final_is_start{false};      // S_n == S_0
};

/// One walk trial on an explicit graph; R_n streams over a visited mask.
/// dist_from_start, when supplied, must be bfs_distances(g, start).
RangeSample simulate_graph(const WeightedGraph& g, VertexId start, std::uint64_t steps,
                           Xoshiro256& rng,
                           std::span<const std::uint32_t> dist_from_start = {});

/// Checkpointed variant: ranges[i] = R at checkpoints[i] (ascending,
/// final checkpoint = total step count).
std::vector<std::int64_t> simulate_graph_checkpoints(const WeightedGraph& g, VertexId start,
                                                     std::span<const std::uint64_t> checkpoints,
                                                     Xoshiro256& rng,
                                                     RangeSample* final_sample = nullptr);

namespace detail {

/// Exact visited-set bookkeeping for walks on implicit trees: one arena node
/// per distinct visited vertex, child slots resolved in O(1). No hashing, so
/// no collision risk; memory is O(R_n).
template <class Model>
class VisitTrie {
public:
    using State = typename Model::State;

    struct Node {
        State state;
        std::uint32_t parent;
        std::uint32_t slots_begin;
        std::uint32_t child_count;
        std::int32_t dist_to_start;
        bool visited;
    };

    VisitTrie(const Model& model, const TreeAddress& start) : model_(&model) {
        // Spine root -> start so the walk can climb above its start vertex.
        State st = model.root();
        std::uint32_t prev = push_node(st, 0, static_cast<std::int32_t>(start.size()));
        for (std::size_t i = 0; i < start.size(); ++i) {
            const std::uint32_t cc = nodes_[prev].child_count;
            RWRANGE_REQUIRE(start[i] < cc, UnknownVertex,
                            "start address leaves the tree at depth " + std::to_string(i));
            st = model.child_state(nodes_[prev].state, start[i]);
            const std::uint32_t next =
                push_node(st, prev, static_cast<std::int32_t>(start.size() - i - 1));
            slots_[nodes_[prev].slots_begin + start[i]] = next + 1;
            prev = next;
        }
        start_ = prev;
        cur_ = prev;
        nodes_[cur_].visited = true;
    }

    std::uint32_t degree() const {
        const Node& n = nodes_[cur_];
        return n.child_count + (cur_ == 0 ? 0 : 1);
    }

    /// Moves along neighbor option `pick` in [0, degree()); 0 is the parent
    /// for non-root vertices. Returns true on a first visit.
    bool move(std::uint32_t pick) {
        Node& n = nodes_[cur_];
        if (cur_ != 0) {
            if (pick == 0) {
                cur_ = n.parent;
            } else {
                descend(pick - 1);
            }
        } else {
            descend(pick);
        }
        Node& m = nodes_[cur_];
        const bool first = !m.visited;
        m.visited = true;
        return first;
    }

    bool at_start() const { return cur_ == start_; }
    std::uint32_t current_depth() const { return model_->depth(nodes_[cur_].state); }
    std::uint32_t distance_to_start() const {
        return static_cast<std::uint32_t>(nodes_[cur_].dist_to_start);
    }

private:
    void descend(std::uint32_t child_idx) {
        Node& n = nodes_[cur_];
        const std::uint32_t slot_pos = n.slots_begin + child_idx;
        std::uint32_t link = slots_[slot_pos];
        if (link == 0) {
            const State st = model_->child_state(n.state, child_idx);
            const std::uint32_t fresh = push_node(st, cur_, n.dist_to_start + 1);
            slots_[slot_pos] = fresh + 1;
            link = fresh + 1;
        }
        cur_ = link - 1;
    }

    std::uint32_t push_node(const State& st, std::uint32_t parent, std::int32_t dist) {
        Node n;
        n.state = st;
        n.parent = parent;
        n.child_count = model_->child_count_state(st);
        n.slots_begin = static_cast<std::uint32_t>(slots_.size());
        n.dist_to_start = dist;
        n.visited = false;
        slots_.resize(slots_.size() + n.child_count, 0);
        nodes_.push_back(n);
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    const Model* model_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> slots_; // node index + 1; 0 = not yet visited
    std::uint32_t cur_{0};
    std::uint32_t start_{0};
};

} // namespace detail

/// One walk trial on an implicit tree. Checkpoints ascending; the last one
/// is the trial horizon n, and R counts S_0..S_{n-1} while final_* describes
/// S_n.
template <class Model>
std::vector<std::int64_t> simulate_tree_checkpoints(const Model& model, const TreeAddress& start,
                                                    std::span<const std::uint64_t> checkpoints,
                                                    Xoshiro256& rng,
                                                    RangeSample* final_sample = nullptr) {
    RWRANGE_REQUIRE(!checkpoints.empty() && checkpoints.back() >= 1, SpecInvariantViolated,
                    "walk needs at least one step");
    detail::VisitTrie<Model> trie(model, start);
    const std::uint64_t n = checkpoints.back();
    std::vector<std::int64_t> out;
    out.reserve(checkpoints.size());
    std::int64_t range = 1;
    std::size_t next_cp = 0;
    while (next_cp < checkpoints.size() && checkpoints[next_cp] <= 1) {
        out.push_back(range); // R_1 = 1: only S_0 counted
        ++next_cp;
    }
    for (std::uint64_t step = 1; step <= n; ++step) {
        const bool first = trie.move(rng.bounded(trie.degree()));
        if (first && step < n) ++range; // S_step contributes to R_m for m > step
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == step + 1) {
            out.push_back(range);
            ++next_cp;
        }
    }
    if (final_sample) {
        final_sample->range = range;
        final_sample->final_distance = trie.distance_to_start();
        final_sample->final_is_start = trie.at_start();
    }
    return out;
}

template <class Model>
RangeSample simulate_tree(const Model& model, const TreeAddress& start, std::uint64_t steps,
                          Xoshiro256& rng) {
    RangeSample sample;
    const std::uint64_t cp[1] = {steps};
    auto ranges = simulate_tree_checkpoints(model, start, cp, rng, &sample);
    sample.range = ranges.back();
    return sample;
}

// ---------------------------------------------------------------------------
// Trial batches
// ---------------------------------------------------------------------------

/// Runs `trials` independent walks with per-trial generators derived from
/// (master_seed, trial_index). Results are identical under any job count:
/// each trial writes its own slot and aggregation happens downstream in
/// trial order.
std::vector<RangeSample> run_graph_trials(const WeightedGraph& g, VertexId start,
                                          std::uint64_t steps, std::uint64_t trials,
                                          std::uint64_t master_seed, int jobs = 1,
                                          std::uint64_t step_budget = 2'000'000'000ULL);

namespace detail {
void parallel_for_trials(std::uint64_t trials, int jobs,
                         const std::function<void(std::uint64_t)>& body);
}

template <class Model>
std::vector<RangeSample> run_tree_trials(const Model& model, const TreeAddress& start,
                                         std::uint64_t steps, std::uint64_t trials,
                                         std::uint64_t master_seed, int jobs = 1,
                                         std::uint64_t step_budget = 2'000'000'000ULL) {
    RWRANGE_REQUIRE(steps >= 1 && trials >= 1, SpecInvariantViolated,
                    "need steps >= 1 and trials >= 1");
    RWRANGE_REQUIRE(steps * trials <= step_budget, BudgetExceeded,
                    "trial batch of " + std::to_string(steps * trials) +
                        " steps exceeds step budget");
    std::vector<RangeSample> out(trials);
    detail::parallel_for_trials(trials, jobs, [&](std::uint64_t t) {
        Xoshiro256 rng = Xoshiro256::for_trial(master_seed, t);
        out[t] = simulate_tree(model, start, steps, rng);
    });
    return out;
}

} // namespace rwrange
