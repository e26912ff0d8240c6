#pragma once

#include "wgtk/common.hpp"
#include "wgtk/vertex_table.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace wgtk {

enum class Reliability { reliable, mixed, unreliable };

enum class Bias {
    extreme_left,
    left,
    center_left,
    center,
    center_right,
    right,
    extreme_right,
};

std::string to_string(Reliability r);
std::string to_string(Bias b);
Reliability reliability_from_string(std::string_view s);
Bias bias_from_string(std::string_view s);

struct LabelRow {
    std::string domain;
    Reliability reliability = Reliability::reliable;
    std::optional<Bias> bias;
};

/// News-domain reliability (and optional political bias) labels.
class LabelTable {
public:
    LabelTable() = default;

    /// CSV with header `domain,reliability[,bias]`; empty bias fields allowed.
    static LabelTable load(const std::string& path);
    void save(const std::string& path) const;

    void add(LabelRow row);
    const std::vector<LabelRow>& rows() const { return rows_; }
    const LabelRow* find(std::string_view domain) const;

private:
    std::vector<LabelRow> rows_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Uniform sample (without replacement) of ceil(fraction * n) rows with the
/// given reliability; deterministic under `seed`. Errors if no rows match.
LabelTable sample_labels(const LabelTable& labels, Reliability reliability, double fraction,
                         std::uint64_t seed);

/// Sorted unique node ids; the resolved form of a domain list.
using DomainSet = std::vector<NodeId>;

struct ResolvedDomains {
    DomainSet ids;
    std::vector<std::string> unresolved;
};

/// Resolves names against the vertex table, trying the name as written and
/// its reversed-host form. Failures are reported, never fatal.
ResolvedDomains resolve_domains(const std::vector<std::string>& names, const VertexTable& vertices);

std::vector<std::string> read_domain_list(const std::string& path);
void write_domain_list(const std::string& path, const std::vector<std::string>& names);

} // namespace wgtk
