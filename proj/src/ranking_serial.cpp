#include "kernel_internal.hpp"

#include <cmath>

namespace wgtk::detail {

PullGraph build_pull_graph(const WebGraph& g) {
    const NodeId n = g.node_count();
    PullGraph pg;
    pg.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    pg.inv_out_degree.assign(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        const NodeId deg = g.out_degree(u);
        if (deg == 0)
            pg.dangling.push_back(u);
        else
            pg.inv_out_degree[u] = 1.0 / static_cast<double>(deg);
        for (NodeId t : g.outlinks(u)) ++pg.offsets[t + 1];
    }
    for (std::size_t i = 1; i < pg.offsets.size(); ++i) pg.offsets[i] += pg.offsets[i - 1];
    pg.sources.resize(g.edge_count());
    std::vector<std::uint64_t> cursor(pg.offsets.begin(), pg.offsets.end() - 1);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId t : g.outlinks(u)) pg.sources[cursor[t]++] = u;
    return pg;
}

/**
 * Reference implementation: plain loops, fixed summation order, bit-identical
 * results across runs. The OpenMP path in ranking_parallel.cpp mirrors this
 * loop structure exactly.
 */
ScoreVector power_iteration_serial(const PullGraph& pg, const std::vector<double>& teleport,
                                   const RankingParams& params) {
    const NodeId n = pg.node_count();
    const double d = params.damping;

    ScoreVector result;
    std::vector<double>& x = result.scores;
    x = teleport;
    std::vector<double> next(n), contrib(n);

    for (std::uint32_t iter = 1; iter <= params.max_iterations; ++iter) {
        double dangling_mass = 0.0;
        for (NodeId u = 0; u < n; ++u) contrib[u] = x[u] * pg.inv_out_degree[u];
        for (NodeId w : pg.dangling) dangling_mass += x[w];
        const double base = d * dangling_mass + (1.0 - d);

        double residual = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            double sum = 0.0;
            for (std::uint64_t k = pg.offsets[u]; k < pg.offsets[u + 1]; ++k)
                sum += contrib[pg.sources[k]];
            const double value = d * sum + base * teleport[u];
            residual += std::abs(value - x[u]);
            next[u] = value;
        }
        x.swap(next);
        result.iterations_used = iter;
        result.residual = residual;
        if (residual <= params.tolerance) {
            result.converged = true;
            break;
        }
    }

    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
    return result;
}

} // namespace wgtk::detail
