#include "wgtk/webgraph.hpp"

#include "wgtk/io_util.hpp"

#include <algorithm>
#include <fstream>

namespace wgtk {

WebGraph WebGraph::from_edges(NodeId node_count,
                              std::vector<std::pair<NodeId, NodeId>> edges) {
    for (const auto& [src, dst] : edges) {
        if (src >= node_count || dst >= node_count)
            throw ValidationError("edge id out of range: " + std::to_string(src) + " -> " +
                                  std::to_string(dst) + " (node count " +
                                  std::to_string(node_count) + ")");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    WebGraph g;
    g.offsets_.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (const auto& [src, dst] : edges) ++g.offsets_[src + 1];
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.resize(edges.size());
    std::size_t k = 0;
    for (const auto& [src, dst] : edges) g.targets_[k++] = dst;
    return g;
}

WebGraph WebGraph::load(const std::string& path, const VertexTable& vertices) {
    const NodeId n = vertices.size();
    std::vector<std::pair<NodeId, NodeId>> edges;
    LineReader reader(path);
    std::string line;
    while (reader.next(line)) {
        std::string_view view = trim(line);
        if (view.empty()) continue;
        const std::string where = path + ":" + std::to_string(reader.line_number());
        std::size_t tab = view.find('\t');
        if (tab == std::string_view::npos)
            throw ValidationError(where + ": expected '<src>\\t<dst>'");
        std::int64_t src = parse_int(view.substr(0, tab), where);
        std::int64_t dst = parse_int(view.substr(tab + 1), where);
        if (src < 0 || dst < 0 || src >= n || dst >= n)
            throw ValidationError(where + ": vertex id out of range");
        edges.emplace_back(static_cast<NodeId>(src), static_cast<NodeId>(dst));
    }
    return from_edges(n, std::move(edges));
}

WebGraph WebGraph::reversed() const {
    const NodeId n = node_count();
    WebGraph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId t : targets_) ++g.offsets_[t + 1];
    for (std::size_t i = 1; i < g.offsets_.size(); ++i) g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.resize(targets_.size());
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // scanning sources in ascending order leaves each reversed list sorted
    for (NodeId u = 0; u < n; ++u)
        for (NodeId t : outlinks(u)) g.targets_[cursor[t]++] = u;
    return g;
}

WebGraph WebGraph::without_outlinks_from(std::span<const NodeId> sources) const {
    const NodeId n = node_count();
    std::vector<std::uint8_t> drop(n, 0);
    for (NodeId s : sources) {
        if (s >= n) throw ValidationError("source id out of range: " + std::to_string(s));
        drop[s] = 1;
    }
    WebGraph g;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId u = 0; u < n; ++u)
        g.offsets_[u + 1] = g.offsets_[u] + (drop[u] ? 0 : out_degree(u));
    g.targets_.resize(g.offsets_.back());
    for (NodeId u = 0; u < n; ++u) {
        if (drop[u]) continue;
        auto links = outlinks(u);
        std::copy(links.begin(), links.end(), g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[u]));
    }
    return g;
}

GraphStats WebGraph::stats() const {
    GraphStats s;
    s.nodes = node_count();
    s.edges = edge_count();
    s.mean_degree = s.nodes ? static_cast<double>(s.edges) / static_cast<double>(s.nodes) : 0.0;
    for (NodeId u = 0; u < node_count(); ++u)
        if (dangling(u)) ++s.dangling_count;
    s.dangling_fraction = s.nodes ? static_cast<double>(s.dangling_count) / static_cast<double>(s.nodes) : 0.0;
    return s;
}

void WebGraph::save_edges(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open file for writing: " + path);
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId t : outlinks(u)) out << u << '\t' << t << '\n';
    if (!out) throw RuntimeError("write failed: " + path);
}

} // namespace wgtk
