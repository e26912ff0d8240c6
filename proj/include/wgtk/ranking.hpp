#pragma once

#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/vertex_table.hpp"
#include "wgtk/webgraph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wgtk {

struct RankingParams {
    double damping = 0.85;
    double tolerance = 1e-9; // L1 change between iterations
    std::uint32_t max_iterations = 200;
    /// 0 = all available threads; 1 = serial reference path (bit-deterministic).
    int threads = 0;
};

struct ScoreVector {
    std::vector<double> scores; // nonnegative, sums to 1
    std::uint32_t iterations_used = 0;
    double residual = 0.0; // final L1 change
    bool converged = false;

    NodeId size() const { return static_cast<NodeId>(scores.size()); }
};

/**
 * PageRank-family kernels. All four share one pull-based power iteration:
 *
 *   x <- d * A_norm^T x + (d * dangling_mass + (1 - d)) * v
 *
 * and differ only in the teleport vector v. Dangling mass is redistributed
 * according to v every iteration, so the score sum stays at 1. Iteration
 * stops when the L1 change drops to `tolerance` or `max_iterations` is hit;
 * non-convergence is reported via `residual`, not an error.
 */
ScoreVector pagerank(const WebGraph& g, const RankingParams& params = {});

/// Teleport uniform over `seeds` (1/|S| each, 0 elsewhere).
ScoreVector personalized_pagerank(const WebGraph& g, std::span<const NodeId> seeds,
                                  const RankingParams& params = {});

/// personalized_pagerank on the edge-reversed graph; high scores flag domains
/// linking into the seed set.
ScoreVector anti_trustrank(const WebGraph& g, std::span<const NodeId> seeds,
                           const RankingParams& params = {});

/// Teleport zero on `excluded` and uniform over the rest, deranking the
/// excluded set's influence. `excluded` must be a strict subset of the nodes.
ScoreVector inverse_ppr(const WebGraph& g, std::span<const NodeId> excluded,
                        const RankingParams& params = {});

/// Ordinal positions, 1 = highest score, ties broken by ascending id.
/// The result is a permutation of 1..N indexed by node id.
std::vector<std::uint32_t> rank_positions(const ScoreVector& s);

// --- score persistence ---

/// CSV `domain,score`, sorted by descending score (ties by ascending id).
void write_scores_csv(const std::string& path, const VertexTable& vertices,
                      const ScoreVector& scores);

/// (domain, score) rows in file order.
std::vector<std::pair<std::string, double>> read_scores_csv(const std::string& path);

/// 16-byte header (magic "WGSCORE1", node count as 64-bit little-endian)
/// followed by the scores as little-endian 64-bit floats in id order.
void write_scores_binary(const std::string& path, const ScoreVector& scores);
ScoreVector read_scores_binary(const std::string& path);

void write_ranks_csv(const std::string& path, const VertexTable& vertices,
                     std::span<const std::uint32_t> positions);

} // namespace wgtk
