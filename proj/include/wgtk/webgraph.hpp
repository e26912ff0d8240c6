#pragma once

#include "wgtk/common.hpp"
#include "wgtk/vertex_table.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wgtk {

struct GraphStats {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
    double mean_degree = 0.0;
    std::uint64_t dangling_count = 0;
    double dangling_fraction = 0.0;
};

/**
 * Immutable directed host-level graph in flat CSR form (offsets + targets).
 * Outlink lists are sorted ascending with duplicates removed; a node with an
 * empty outlink list is dangling. Out-degree lookups are O(1) and adjacency
 * scans are contiguous, which is what the ranking kernels iterate over.
 */
class WebGraph {
public:
    WebGraph() : offsets_(1, 0) {}

    /// Builds from an arbitrary edge list; sorts, deduplicates, validates ids.
    static WebGraph from_edges(NodeId node_count,
                               std::vector<std::pair<NodeId, NodeId>> edges);

    /// Loads "<src>\t<dst>" lines with ids valid under `vertices`.
    static WebGraph load(const std::string& path, const VertexTable& vertices);

    NodeId node_count() const { return static_cast<NodeId>(offsets_.size() - 1); }
    std::uint64_t edge_count() const { return offsets_.back(); }

    std::span<const NodeId> outlinks(NodeId u) const {
        return {targets_.data() + offsets_[u],
                static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
    }
    NodeId out_degree(NodeId u) const {
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }
    bool dangling(NodeId u) const { return offsets_[u + 1] == offsets_[u]; }

    /// Edge i->j exists in the result iff j->i exists here.
    WebGraph reversed() const;

    /// Copy with the outlink lists of `sources` emptied; everything else
    /// identical. Ids must be in range.
    WebGraph without_outlinks_from(std::span<const NodeId> sources) const;

    GraphStats stats() const;

    void save_edges(const std::string& path) const;

    bool operator==(const WebGraph&) const = default;

private:
    std::vector<std::uint64_t> offsets_; // size N+1
    std::vector<NodeId> targets_;
};

} // namespace wgtk
