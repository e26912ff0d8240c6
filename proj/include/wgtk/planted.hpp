#pragma once

#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/vertex_table.hpp"
#include "wgtk/webgraph.hpp"

#include <cstdint>

namespace wgtk {

/**
 * Parameters for a synthetic host graph with a planted link-scheme farm.
 *
 * Node layout (dense id ranges, in order): reliable news, mixed news,
 * unreliable news, scheme, background. Scheme nodes aim fraction `skew` of
 * their outlinks at unreliable+mixed news and the rest at reliable news or
 * background; they also cross-link to other scheme nodes, which is what makes
 * seed extension via reversed-graph scoring recover the farm. Every other
 * node links uniformly at random.
 */
struct PlantedSpec {
    std::uint32_t reliable_count = 0;
    std::uint32_t mixed_count = 0;
    std::uint32_t unreliable_count = 0;
    std::uint32_t scheme_count = 0;
    std::uint32_t background_count = 0;
    /// Outlink draws per scheme node (before binarization dedup).
    std::uint32_t scheme_links_per_target = 0;
    /// Cross-links each scheme node makes to other scheme nodes.
    std::uint32_t scheme_crosslinks = 0;
    /// Outlink draws per non-scheme node.
    std::uint32_t background_links_per_node = 10;
    /// Fraction of scheme outlink draws aimed at unreliable+mixed targets.
    double skew = 0.9;
    std::uint64_t rng_seed = 0;

    std::uint32_t total_nodes() const {
        return reliable_count + mixed_count + unreliable_count + scheme_count + background_count;
    }
};

struct PlantedGraph {
    WebGraph graph;
    VertexTable vertices;
    LabelTable labels;      // news nodes only
    DomainSet true_schemes; // ground truth, sorted ids

    // id range boundaries, in layout order
    NodeId reliable_end = 0;
    NodeId mixed_end = 0;
    NodeId unreliable_end = 0;
    NodeId scheme_end = 0;

    DomainSet unreliable_ids() const;
    DomainSet background_ids() const;
};

/// Deterministic under rng_seed: equal specs produce byte-identical graphs.
PlantedGraph generate_planted_graph(const PlantedSpec& spec);

} // namespace wgtk
