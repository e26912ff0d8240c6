#pragma once

#include "wgtk/ranking.hpp"
#include "wgtk/webgraph.hpp"

#include <vector>

namespace wgtk::detail {

/**
 * Pull-side view of a graph: each node's original in-neighbors, plus
 * reciprocal out-degrees and the dangling node list. Built once per kernel
 * invocation; both execution paths iterate over it identically, so the
 * parallel path differs from the serial one only in summation order of the
 * global reductions.
 */
struct PullGraph {
    std::vector<std::uint64_t> offsets; // in-neighbor ranges, size N+1
    std::vector<NodeId> sources;        // concatenated in-neighbors
    std::vector<double> inv_out_degree; // 0 for dangling nodes
    std::vector<NodeId> dangling;

    NodeId node_count() const { return static_cast<NodeId>(offsets.size() - 1); }
};

PullGraph build_pull_graph(const WebGraph& g);

ScoreVector power_iteration_serial(const PullGraph& pg, const std::vector<double>& teleport,
                                   const RankingParams& params);

ScoreVector power_iteration_parallel(const PullGraph& pg, const std::vector<double>& teleport,
                                     const RankingParams& params, int threads);

/// Validates params and teleport, dispatches on params.threads.
ScoreVector power_iteration(const WebGraph& g, const std::vector<double>& teleport,
                            const RankingParams& params);

} // namespace wgtk::detail
