#include "wgtk/linkscheme.hpp"

#include <algorithm>
#include <map>

namespace wgtk {

std::vector<std::string> identify_link_schemes(const WeightedNetwork& net,
                                               const std::set<std::string>& unreliable,
                                               const SchemeThresholds& thresholds,
                                               bool exclude_unreliable_sources) {
    if (thresholds.min_total_backlinks_to_unreliable == 0 &&
        thresholds.min_distinct_unreliable_targets == 0)
        throw ValidationError("at least one scheme threshold must be positive");

    struct Tally {
        std::uint64_t volume = 0;
        std::uint64_t targets = 0;
    };
    std::map<std::string, Tally> per_source;
    for (const auto& e : net.edges) {
        if (!unreliable.count(e.target)) continue;
        auto& t = per_source[e.source];
        t.volume += e.backlinks;
        t.targets += 1; // (source, target) pairs are unique by construction
    }

    std::vector<std::string> out;
    for (const auto& [source, tally] : per_source) {
        if (tally.volume < thresholds.min_total_backlinks_to_unreliable) continue;
        if (tally.targets < thresholds.min_distinct_unreliable_targets) continue;
        if (exclude_unreliable_sources && unreliable.count(source)) continue;
        out.push_back(source);
    }
    return out;
}

DomainSet identify_link_schemes_binary(const WebGraph& g, std::span<const NodeId> unreliable,
                                       std::uint32_t beta_min) {
    if (beta_min < 1) throw ValidationError("beta_min must be >= 1");
    const NodeId n = g.node_count();
    std::vector<std::uint8_t> is_unreliable(n, 0);
    for (NodeId u : unreliable) {
        if (u >= n) throw ValidationError("unreliable id out of range: " + std::to_string(u));
        is_unreliable[u] = 1;
    }
    DomainSet out;
    for (NodeId s = 0; s < n; ++s) {
        std::uint32_t hits = 0;
        for (NodeId t : g.outlinks(s)) hits += is_unreliable[t];
        if (hits >= beta_min) out.push_back(s);
    }
    return out;
}

DomainSet atr_extend(const WebGraph& g, std::span<const NodeId> seeds,
                     const RankingParams& params, const AtrSelection& selection) {
    if (selection.top_k.has_value() == selection.score_threshold.has_value())
        throw ValidationError("atr_extend needs exactly one of top_k / score_threshold");
    const ScoreVector atr = anti_trustrank(g, seeds, params);

    DomainSet selected;
    if (selection.top_k) {
        selected = top_k_by_score(atr, *selection.top_k);
    } else {
        if (!(*selection.score_threshold > 0.0))
            throw ValidationError("score threshold must be > 0");
        for (NodeId u = 0; u < atr.size(); ++u)
            if (atr.scores[u] > *selection.score_threshold) selected.push_back(u);
    }
    selected.insert(selected.end(), seeds.begin(), seeds.end());
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    return selected;
}

DomainSet multi_category_intersect(const ScoreVector& a, const ScoreVector& b, double tau) {
    if (a.size() != b.size())
        throw ValidationError("score vectors cover different node universes");
    if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
    DomainSet out;
    for (NodeId u = 0; u < a.size(); ++u)
        if (a.scores[u] > tau && b.scores[u] > tau) out.push_back(u);
    return out;
}

DomainSet top_k_by_score(const ScoreVector& scores, std::uint64_t k) {
    const NodeId n = scores.size();
    if (k > n) throw ValidationError("top_k exceeds node count");
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](NodeId a, NodeId b) {
                          if (scores.scores[a] != scores.scores[b])
                              return scores.scores[a] > scores.scores[b];
                          return a < b;
                      });
    DomainSet out(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace wgtk
