#pragma once

#include "wgtk/common.hpp"
#include "wgtk/labels.hpp"
#include "wgtk/ranking.hpp"
#include "wgtk/webgraph.hpp"
#include "wgtk/weighted_network.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wgtk {

/**
 * Link-scheme thresholds for the weighted identification rule. A source is
 * flagged when BOTH hold: its total backlink volume into unreliable targets
 * reaches the volume threshold, and it hits at least the given number of
 * distinct unreliable targets. Small-scale defaults follow the published
 * parameterization (100000, 2).
 */
struct SchemeThresholds {
    std::uint64_t min_total_backlinks_to_unreliable = 100000;
    std::uint64_t min_distinct_unreliable_targets = 2;
};

/// Sources flagged by the weighted rule, sorted by name. Sources that are
/// themselves unreliable stay eligible unless `exclude_unreliable_sources`.
std::vector<std::string> identify_link_schemes(const WeightedNetwork& net,
                                               const std::set<std::string>& unreliable,
                                               const SchemeThresholds& thresholds,
                                               bool exclude_unreliable_sources = false);

/// Binarized-graph rule: nodes with at least `beta_min` distinct outlink
/// targets inside the unreliable set.
DomainSet identify_link_schemes_binary(const WebGraph& g, std::span<const NodeId> unreliable,
                                       std::uint32_t beta_min);

/// Exactly one of top_k / score_threshold must be set.
struct AtrSelection {
    std::optional<std::uint64_t> top_k;
    std::optional<double> score_threshold;
};

/// Runs anti_trustrank seeded with `seeds`, selects domains by the given
/// mode, and returns selection ∪ seeds (sorted).
DomainSet atr_extend(const WebGraph& g, std::span<const NodeId> seeds,
                     const RankingParams& params, const AtrSelection& selection);

/// Domains whose score exceeds tau in both vectors.
DomainSet multi_category_intersect(const ScoreVector& a, const ScoreVector& b, double tau);

/// The k highest-scoring domains, ties broken by ascending id.
DomainSet top_k_by_score(const ScoreVector& scores, std::uint64_t k);

} // namespace wgtk
