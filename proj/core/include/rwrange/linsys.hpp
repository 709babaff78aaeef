#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwrange/graph.hpp"

namespace rwrange {

/// Graph Laplacian restricted to an active vertex subset (rows/columns
/// outside the subset are removed, i.e. the walk is killed there).
/// The restriction of the Laplacian of a connected graph to a proper
/// subset is symmetric positive definite.
class KilledLaplacian {
public:
    KilledLaplacian(const WeightedGraph& g, std::span<const VertexId> active);

    std::size_t size() const { return active_.size(); }
    const std::vector<VertexId>& active() const { return active_; }
    bool contains(VertexId v) const { return local_index_[v] >= 0; }
    std::uint32_t local(VertexId v) const { return static_cast<std::uint32_t>(local_index_[v]); }

    void matvec(std::span<const double> x, std::span<double> y) const;

    /// Preconditioned conjugate gradients to a relative residual target,
    /// measured against the true residual. Throws SolverDivergence when the
    /// residual cannot be brought below the acceptance floor.
    std::vector<double> solve(std::span<const double> rhs, double tol = 1e-13) const;

private:
    const WeightedGraph* g_;
    std::vector<VertexId> active_;
    std::vector<std::int32_t> local_index_;
    std::vector<double> diag_;
};

} // namespace rwrange
