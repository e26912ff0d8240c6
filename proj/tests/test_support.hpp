#pragma once

#include "wgtk/common.hpp"
#include "wgtk/ranking.hpp"
#include "wgtk/webgraph.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace wgtk::testing {

/**
 * Dense power-iteration oracle over an explicit adjacency matrix. Kept
 * deliberately independent of the CSR kernels: O(N^2) scans, no pull graph,
 * no reciprocal-degree caching. Used to pin expected values for the sparse
 * implementations.
 */
inline std::vector<double> dense_pagerank_oracle(const std::vector<std::vector<bool>>& adj,
                                               const std::vector<double>& teleport,
                                               double damping, int iterations = 1000) {
    const std::size_t n = adj.size();
    std::vector<double> degree(n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t t = 0; t < n; ++t)
            if (adj[u][t]) degree[u] += 1.0;

    std::vector<double> x = teleport, next(n);
    for (int it = 0; it < iterations; ++it) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u)
            if (degree[u] == 0.0) dangling += x[u];
        for (std::size_t u = 0; u < n; ++u) {
            double sum = 0.0;
            for (std::size_t w = 0; w < n; ++w)
                if (adj[w][u]) sum += x[w] / degree[w];
            next[u] = damping * sum + (damping * dangling + 1.0 - damping) * teleport[u];
        }
        x.swap(next);
    }
    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
    return x;
}

inline std::vector<std::vector<bool>> adjacency_of(const WebGraph& g) {
    std::vector<std::vector<bool>> adj(g.node_count(), std::vector<bool>(g.node_count(), false));
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId t : g.outlinks(u)) adj[u][t] = true;
    return adj;
}

inline std::vector<double> uniform_teleport(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

/// Random digraph with self-loops allowed; sparse enough to leave some
/// nodes dangling.
inline WebGraph random_graph(Rng& rng, NodeId n, double edge_prob) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId t = 0; t < n; ++t)
            if (rng.bernoulli(edge_prob)) edges.emplace_back(u, t);
    return WebGraph::from_edges(n, std::move(edges));
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) out += std::abs(a[i] - b[i]);
    return out;
}

/// Unique scratch directory under the system temp dir; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0;; ++i) {
            path_ = base / (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
            if (std::filesystem::create_directory(path_)) break;
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace wgtk::testing
