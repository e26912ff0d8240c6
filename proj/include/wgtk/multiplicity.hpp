#pragma once

#include "wgtk/common.hpp"
#include "wgtk/weighted_network.hpp"

#include <map>
#include <string>
#include <vector>

namespace wgtk {

struct UrlPairTable {
    struct Row {
        std::string source_domain;
        std::string source_url;
        std::string dest_url;
    };
    std::vector<Row> rows;
    std::uint64_t dropped_filetype = 0; // rows removed by the extension filter
};

/// CSV `source_domain,source_url,dest_url`. Rows whose dest_url ends
/// (case-insensitively) in .jpg, .png, .css, or .js are dropped and counted.
UrlPairTable ingest_url_pairs(const std::string& path);

/// (source_domain, dest_url) -> number of occurrences. Repetition is the
/// signal: one sidebar link rendered on every page of a source shows up as
/// high multiplicity.
using MultiplicityTable = std::map<std::pair<std::string, std::string>, std::uint64_t>;

MultiplicityTable compute_multiplicity(const UrlPairTable& pairs);

struct ScaleParams {
    double lower = 0.0;
    double upper = 2.0;
};

struct PairScore {
    std::string source_domain;
    std::string dest_url;
    std::uint64_t multiplicity = 0;
    double score = 0.0;
};

/**
 * Inverts multiplicities through an order-reversing minmax map onto
 * [lower, upper]: the most repeated pair scores `lower`, the least repeated
 * scores `upper`. A degenerate table (all multiplicities equal) maps to the
 * midpoint. Extrema are global over the whole table.
 */
std::vector<PairScore> score_multiplicity(const MultiplicityTable& m, const ScaleParams& scale);

struct EdgeScore {
    std::string source;
    std::string target;
    double score = 0.0;
    std::uint64_t pair_count = 0;
};

/// Per-edge multiplicity scores keyed by (source, target), kept sorted.
struct EdgeScoreTable {
    std::vector<EdgeScore> entries;

    const EdgeScore* find(const std::string& source, const std::string& target) const;
    static EdgeScoreTable load(const std::string& path); // CSV source,target,score
    void save(const std::string& path) const;

    /// Copy with every score multiplied by `factor` (rescaling a table built
    /// at unit scale to another upper bound; lower is pinned at 0).
    EdgeScoreTable scaled(double factor) const;
};

/// Mean pair score per (source_domain, destination host) edge. The
/// destination host is taken verbatim from the URL authority; no
/// canonicalization beyond that.
EdgeScoreTable aggregate_edge_scores(const std::vector<PairScore>& pair_scores,
                                     const ScaleParams& scale);

/// Host part of a URL ("https://x.com/a?b" -> "x.com"). Scheme, port,
/// userinfo, path, query are stripped; nothing else is normalized.
std::string host_of_url(std::string_view url);

} // namespace wgtk
