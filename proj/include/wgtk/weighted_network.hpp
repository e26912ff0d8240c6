#pragma once

#include "wgtk/common.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wgtk {

struct WeightedEdge {
    std::string source;
    std::string target;
    std::uint64_t backlinks = 0;
    std::uint64_t ref_pages = 0;
};

/**
 * Domain-level backlink network with edge weights (backlink and
 * referring-page counts), as exported by SEO toolkits. (source, target)
 * pairs are unique; duplicates in the input are rejected because their
 * weights would be ambiguous.
 */
struct WeightedNetwork {
    std::vector<WeightedEdge> edges;

    /// CSV with header `source,target,backlinks,ref_pages`.
    static WeightedNetwork load(const std::string& path);
    void save(const std::string& path) const;
};

/// Keeps exactly the edges with backlinks >= min_backlinks and
/// ref_pages >= min_ref_pages.
WeightedNetwork filter_weighted_edges(const WeightedNetwork& net,
                                      std::uint64_t min_backlinks,
                                      std::uint64_t min_ref_pages);

} // namespace wgtk
