#include "wgtk/ranking.hpp"

#include "kernel_internal.hpp"
#include "wgtk/io_util.hpp"

#include <omp.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

namespace wgtk {

namespace detail {

ScoreVector power_iteration(const WebGraph& g, const std::vector<double>& teleport,
                            const RankingParams& params) {
    if (g.node_count() == 0) throw ValidationError("graph has no nodes");
    if (!(params.damping > 0.0 && params.damping < 1.0))
        throw ValidationError("damping must be in (0, 1)");
    if (!(params.tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
    if (params.max_iterations == 0) throw ValidationError("max_iterations must be >= 1");

    const PullGraph pg = build_pull_graph(g);
    const int threads = params.threads > 0 ? params.threads : omp_get_max_threads();
    if (threads == 1) return power_iteration_serial(pg, teleport, params);
    return power_iteration_parallel(pg, teleport, params, threads);
}

} // namespace detail

namespace {

std::vector<double> uniform_teleport(NodeId n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<double> seeded_teleport(NodeId n, std::span<const NodeId> seeds) {
    std::vector<std::uint8_t> mark(n, 0);
    NodeId unique = 0;
    for (NodeId s : seeds) {
        if (s >= n) throw ValidationError("seed id out of range: " + std::to_string(s));
        if (!mark[s]) {
            mark[s] = 1;
            ++unique;
        }
    }
    if (unique == 0) throw ValidationError("seed set is empty");
    std::vector<double> v(n, 0.0);
    const double w = 1.0 / static_cast<double>(unique);
    for (NodeId u = 0; u < n; ++u)
        if (mark[u]) v[u] = w;
    return v;
}

std::vector<double> excluding_teleport(NodeId n, std::span<const NodeId> excluded) {
    std::vector<std::uint8_t> mark(n, 0);
    NodeId unique = 0;
    for (NodeId s : excluded) {
        if (s >= n) throw ValidationError("excluded id out of range: " + std::to_string(s));
        if (!mark[s]) {
            mark[s] = 1;
            ++unique;
        }
    }
    if (unique == n)
        throw ValidationError("excluded set covers all nodes; teleport cannot normalize");
    std::vector<double> v(n, 0.0);
    const double w = 1.0 / static_cast<double>(n - unique);
    for (NodeId u = 0; u < n; ++u)
        if (!mark[u]) v[u] = w;
    return v;
}

} // namespace

ScoreVector pagerank(const WebGraph& g, const RankingParams& params) {
    return detail::power_iteration(g, uniform_teleport(g.node_count()), params);
}

ScoreVector personalized_pagerank(const WebGraph& g, std::span<const NodeId> seeds,
                                  const RankingParams& params) {
    return detail::power_iteration(g, seeded_teleport(g.node_count(), seeds), params);
}

ScoreVector anti_trustrank(const WebGraph& g, std::span<const NodeId> seeds,
                           const RankingParams& params) {
    return personalized_pagerank(g.reversed(), seeds, params);
}

ScoreVector inverse_ppr(const WebGraph& g, std::span<const NodeId> excluded,
                        const RankingParams& params) {
    return detail::power_iteration(g, excluding_teleport(g.node_count(), excluded), params);
}

std::vector<std::uint32_t> rank_positions(const ScoreVector& s) {
    const NodeId n = s.size();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (s.scores[a] != s.scores[b]) return s.scores[a] > s.scores[b];
        return a < b;
    });
    std::vector<std::uint32_t> positions(n);
    for (NodeId k = 0; k < n; ++k) positions[order[k]] = k + 1;
    return positions;
}

void write_scores_csv(const std::string& path, const VertexTable& vertices,
                      const ScoreVector& scores) {
    if (vertices.size() != scores.size())
        throw ValidationError("vertex table and score vector sizes differ");
    const NodeId n = scores.size();
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
        return a < b;
    });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "domain,score\n";
    for (NodeId id : order)
        out << join_csv({vertices.name(id), format_double(scores.scores[id])}) << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

std::vector<std::pair<std::string, double>> read_scores_csv(const std::string& path) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ValidationError(path + ": empty file");
    auto header = split_csv(line);
    if (header.size() < 2 || std::string(trim(header[0])) != "domain" ||
        std::string(trim(header[1])) != "score")
        throw ValidationError(path + ":1: expected header domain,score");
    std::vector<std::pair<std::string, double>> out;
    while (reader.next(line)) {
        if (trim(line).empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        auto fields = split_csv(line);
        if (fields.size() < 2) throw ValidationError(where + ": expected 2 fields");
        out.emplace_back(std::string(trim(fields[0])), parse_double(fields[1], where));
    }
    return out;
}

static constexpr char kScoreMagic[8] = {'W', 'G', 'S', 'C', 'O', 'R', 'E', '1'};

void write_scores_binary(const std::string& path, const ScoreVector& scores) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out.write(kScoreMagic, 8);
    const std::uint64_t n = scores.scores.size();
    out.write(reinterpret_cast<const char*>(&n), 8);
    out.write(reinterpret_cast<const char*>(scores.scores.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
    if (!out) throw RuntimeError("write failed: " + path);
}

ScoreVector read_scores_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    char magic[8];
    std::uint64_t n = 0;
    in.read(magic, 8);
    in.read(reinterpret_cast<char*>(&n), 8);
    if (!in || std::memcmp(magic, kScoreMagic, 8) != 0)
        throw ValidationError(path + ": not a WGSCORE1 snapshot");
    ScoreVector s;
    s.scores.resize(n);
    in.read(reinterpret_cast<char*>(s.scores.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw ValidationError(path + ": truncated snapshot");
    return s;
}

void write_ranks_csv(const std::string& path, const VertexTable& vertices,
                     std::span<const std::uint32_t> positions) {
    if (vertices.size() != positions.size())
        throw ValidationError("vertex table and rank vector sizes differ");
    std::vector<NodeId> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return positions[a] < positions[b]; });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    out << "domain,position\n";
    for (NodeId id : order)
        out << join_csv({vertices.name(id), std::to_string(positions[id])}) << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
