#pragma once

#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/ranking.hpp"
#include "wgtk/vertex_table.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace wgtk {

struct GroupRetention {
    double unreliable = 0.0;
    double mixed = 0.0;
    double reliable = 0.0;
    double ris = 0.0;
};

/**
 * Pre/post comparison of two score vectors over one node universe, grouped by
 * reliability label. Centrality retention is post/pre of the (possibly
 * multi-host aggregated) score; rank retention is pre_position/post_position,
 * so a demotion reads as a value below 1.
 */
struct LargeScaleReport {
    struct PerDomain {
        std::string domain;
        std::string label;
        double pre_score = 0.0;
        double post_score = 0.0;
        std::uint32_t pre_position = 0;  // best position across matched hosts
        std::uint32_t post_position = 0;
        double centrality_retention = 1.0;
        double rank_retention = 1.0;
    };
    GroupRetention centrality;
    GroupRetention rank;
    std::vector<PerDomain> per_domain; // resolved labeled domains
    std::uint64_t unresolved_labels = 0;
    std::uint64_t skipped_zero_pre = 0;

    std::string to_json() const;
    void save_csv(const std::string& path) const;
};

/**
 * Labels resolve against the vertex table by exact name, reversed-host form,
 * and subdomain expansion of the reversed form; multi-host matches aggregate
 * by summing centrality before the retention ratio. Errors when the universes
 * differ or a reliability group resolves no domains.
 */
LargeScaleReport retention_report(const ScoreVector& pre, const ScoreVector& post,
                                  const VertexTable& vertices, const LabelTable& labels);

struct ChangeHistogram {
    std::vector<double> bin_edges; // strictly increasing
    std::vector<std::uint64_t> counts; // counts[i] covers [edge[i], edge[i+1])
    std::uint64_t below_range = 0;
    std::uint64_t above_range = 0;
    std::uint64_t zero_pre = 0; // domains excluded from relative change

    void save_csv(const std::string& path) const;
};

/// Histogram of relative change (post - pre) / pre over domains with pre > 0.
ChangeHistogram change_distribution(const ScoreVector& pre, const ScoreVector& post,
                                    const std::vector<double>& bin_edges);

/// Domains with pre >= min_pre whose score dropped by at least min_drop
/// (as a fraction of pre).
DomainSet affected_domains(const ScoreVector& pre, const ScoreVector& post,
                           double min_pre = 1e-7, double min_drop = 0.5);

/// SimilarWeb-style `domain,category` listing; one category per domain.
class CategoryTable {
public:
    static CategoryTable load(const std::string& path);
    void add(std::string domain, std::string category);
    const std::string* find(std::string_view domain) const;
    std::size_t size() const { return by_domain_.size(); }

private:
    std::unordered_map<std::string, std::string> by_domain_;
};

struct CategoryCounts {
    std::vector<std::pair<std::string, std::uint64_t>> categories; // descending count
    std::uint64_t uncategorized = 0;

    std::string to_json() const;
};

CategoryCounts categorize(const DomainSet& domains, const CategoryTable& categories,
                          const VertexTable& vertices);

} // namespace wgtk
