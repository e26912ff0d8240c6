#include "wgtk/planted.hpp"

#include <algorithm>
#include <unordered_set>

namespace wgtk {

namespace {

/// Floyd's algorithm: k distinct values from [0, n), deterministic.
std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n, std::uint64_t k) {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(k);
    for (std::uint64_t j = n - k; j < n; ++j) {
        std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t binomial_draw(Rng& rng, std::uint32_t n, double p) {
    std::uint32_t hits = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        if (rng.bernoulli(p)) ++hits;
    return hits;
}

} // namespace

DomainSet PlantedGraph::unreliable_ids() const {
    DomainSet out;
    for (NodeId v = mixed_end; v < unreliable_end; ++v) out.push_back(v);
    return out;
}

DomainSet PlantedGraph::background_ids() const {
    DomainSet out;
    for (NodeId v = scheme_end; v < vertices.size(); ++v) out.push_back(v);
    return out;
}

PlantedGraph generate_planted_graph(const PlantedSpec& spec) {
    const std::uint64_t n = spec.total_nodes();
    if (n == 0) throw ValidationError("planted spec produces zero nodes");
    if (!(spec.skew >= 0.0 && spec.skew <= 1.0))
        throw ValidationError("skew must be in [0, 1]");

    PlantedGraph out;
    out.reliable_end = spec.reliable_count;
    out.mixed_end = out.reliable_end + spec.mixed_count;
    out.unreliable_end = out.mixed_end + spec.unreliable_count;
    out.scheme_end = out.unreliable_end + spec.scheme_count;

    auto add_group = [&](const char* stem, std::uint32_t count,
                         std::optional<Reliability> label) {
        for (std::uint32_t i = 0; i < count; ++i) {
            std::string name = std::string("com.") + stem + std::to_string(i);
            out.vertices.add(name);
            if (label) out.labels.add({std::move(name), *label, std::nullopt});
        }
    };
    add_group("rel", spec.reliable_count, Reliability::reliable);
    add_group("mixed", spec.mixed_count, Reliability::mixed);
    add_group("unrel", spec.unreliable_count, Reliability::unreliable);
    add_group("scheme", spec.scheme_count, std::nullopt);
    add_group("bg", spec.background_count, std::nullopt);

    for (NodeId v = out.unreliable_end; v < out.scheme_end; ++v) out.true_schemes.push_back(v);

    // target pools for scheme nodes
    const std::uint64_t bad_pool = spec.mixed_count + spec.unreliable_count; // ids [reliable_end, unreliable_end)
    const std::uint64_t good_pool =
        spec.reliable_count + spec.background_count; // reliable ids + background ids
    auto good_id = [&](std::uint64_t i) -> NodeId {
        return i < spec.reliable_count
                   ? static_cast<NodeId>(i)
                   : static_cast<NodeId>(i - spec.reliable_count + out.scheme_end);
    };

    Rng rng(spec.rng_seed);
    std::vector<std::pair<NodeId, NodeId>> edges;

    for (NodeId s = out.unreliable_end; s < out.scheme_end; ++s) {
        // cross-links to other schemes
        if (spec.scheme_count > 1 && spec.scheme_crosslinks > 0) {
            const std::uint64_t others = spec.scheme_count - 1;
            const std::uint64_t want = std::min<std::uint64_t>(spec.scheme_crosslinks, others);
            for (std::uint64_t pick : sample_distinct(rng, others, want)) {
                NodeId t = static_cast<NodeId>(out.unreliable_end + pick);
                if (t >= s) ++t; // skip self
                edges.emplace_back(s, t);
            }
        }
        // skewed news/background targets
        std::uint32_t bad_draws = binomial_draw(rng, spec.scheme_links_per_target, spec.skew);
        std::uint64_t n_bad = std::min<std::uint64_t>(bad_draws, bad_pool);
        std::uint64_t n_good =
            std::min<std::uint64_t>(spec.scheme_links_per_target - bad_draws, good_pool);
        if (n_bad > 0)
            for (std::uint64_t pick : sample_distinct(rng, bad_pool, n_bad))
                edges.emplace_back(s, static_cast<NodeId>(out.reliable_end + pick));
        if (n_good > 0)
            for (std::uint64_t pick : sample_distinct(rng, good_pool, n_good))
                edges.emplace_back(s, good_id(pick));
    }

    // news and background nodes link uniformly at random over all nodes
    auto uniform_links = [&](NodeId v) {
        for (std::uint32_t i = 0; i < spec.background_links_per_node; ++i)
            edges.emplace_back(v, static_cast<NodeId>(rng.below(n)));
    };
    for (NodeId v = 0; v < out.unreliable_end; ++v) uniform_links(v);
    for (NodeId v = out.scheme_end; v < n; ++v) uniform_links(v);

    out.graph = WebGraph::from_edges(static_cast<NodeId>(n), std::move(edges));
    return out;
}

} // namespace wgtk
