#pragma once

#include "wgtk/common.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wgtk {

/**
 * Dense id <-> domain-name mapping. Ids are contiguous 0..N-1 in file order;
 * names follow the CommonCrawl reversed-host convention ("com.example").
 * Immutable once loaded; safe to share across threads.
 */
class VertexTable {
public:
    VertexTable() = default;

    /// One vertex per line: "<id>\t<name>" with contiguous explicit ids, or
    /// just "<name>" with ids assigned by line order. Mixing is rejected.
    static VertexTable load(const std::string& path);

    /// Builder used by generators; rejects duplicate names.
    NodeId add(std::string name);

    NodeId size() const { return static_cast<NodeId>(names_.size()); }
    const std::string& name(NodeId id) const { return names_[id]; }
    std::optional<NodeId> find(std::string_view name) const;

    /// Ids of vertices named `host` or any subdomain of it (reversed-host
    /// prefix scan). Used when labels name a registered domain that appears
    /// as several hosts in the crawl.
    std::vector<NodeId> find_with_subdomains(std::string_view reversed_host) const;

    void save(const std::string& path) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    mutable std::vector<NodeId> sorted_by_name_; // lazy, for prefix scans
    void ensure_sorted() const;
};

} // namespace wgtk
