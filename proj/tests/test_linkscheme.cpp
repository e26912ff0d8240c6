#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wgtk/linkscheme.hpp"
#include "wgtk/planted.hpp"

#include <set>

using namespace wgtk;
using namespace wgtk::testing;

namespace {

WeightedNetwork spread_network(std::uint64_t total, int targets) {
    WeightedNetwork net;
    for (int i = 0; i < targets; ++i)
        net.edges.push_back({"scheme.com", "unrel" + std::to_string(i) + ".com",
                             total / static_cast<std::uint64_t>(targets), 100});
    return net;
}

std::set<std::string> unreliable_targets(int count) {
    std::set<std::string> out;
    for (int i = 0; i < count; ++i) out.insert("unrel" + std::to_string(i) + ".com");
    return out;
}

} // namespace

TEST_CASE("identify weighted: volume and breadth must both hold") {
    const SchemeThresholds t{100000, 2};

    auto both = identify_link_schemes(spread_network(150000, 3), unreliable_targets(5), t);
    CHECK(both == std::vector<std::string>{"scheme.com"});

    auto breadth_fails =
        identify_link_schemes(spread_network(150000, 1), unreliable_targets(5), t);
    CHECK(breadth_fails.empty());

    auto volume_fails = identify_link_schemes(spread_network(50000, 5), unreliable_targets(5), t);
    CHECK(volume_fails.empty());
}

TEST_CASE("identify weighted: unreliable sources stay eligible unless excluded") {
    WeightedNetwork net;
    net.edges.push_back({"unrel0.com", "unrel1.com", 200000, 100});
    net.edges.push_back({"unrel0.com", "unrel2.com", 200000, 100});
    auto unreliable = unreliable_targets(3);
    const SchemeThresholds t{100000, 2};
    CHECK(identify_link_schemes(net, unreliable, t) == std::vector<std::string>{"unrel0.com"});
    CHECK(identify_link_schemes(net, unreliable, t, true).empty());
}

TEST_CASE("identify weighted: monotone in both thresholds") {
    Rng rng(17);
    WeightedNetwork net;
    auto unreliable = unreliable_targets(10);
    for (int s = 0; s < 30; ++s)
        for (int t = 0; t < 10; ++t)
            if (rng.bernoulli(0.5))
                net.edges.push_back({"src" + std::to_string(s) + ".com",
                                     "unrel" + std::to_string(t) + ".com", rng.below(300000),
                                     100});
    for (std::uint64_t volume : {std::uint64_t{10000}, std::uint64_t{100000}, std::uint64_t{400000}}) {
        for (std::uint64_t targets : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{4}}) {
            auto base = identify_link_schemes(net, unreliable, {volume, targets});
            auto higher_volume = identify_link_schemes(net, unreliable, {volume * 2, targets});
            auto higher_breadth = identify_link_schemes(net, unreliable, {volume, targets + 2});
            for (const auto& d : higher_volume)
                CHECK(std::find(base.begin(), base.end(), d) != base.end());
            for (const auto& d : higher_breadth)
                CHECK(std::find(base.begin(), base.end(), d) != base.end());
        }
    }
}

TEST_CASE("identify binary: boundary at beta_min") {
    // node 0 links to 200 of 250 unreliable nodes; node 1 links to 199
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId t = 0; t < 200; ++t) edges.emplace_back(0, 2 + t);
    for (NodeId t = 0; t < 199; ++t) edges.emplace_back(1, 2 + t);
    auto g = WebGraph::from_edges(252, edges);
    DomainSet unreliable;
    for (NodeId t = 0; t < 250; ++t) unreliable.push_back(2 + t);

    CHECK(identify_link_schemes_binary(g, unreliable, 200) == DomainSet{0});
    CHECK(identify_link_schemes_binary(g, unreliable, 199) == DomainSet{0, 1});
    CHECK_THROWS_AS(identify_link_schemes_binary(g, unreliable, 0), ValidationError);
}

TEST_CASE("identify binary: equals brute-force intersection on random graphs") {
    Rng rng(23);
    for (int trial = 0; trial < 8; ++trial) {
        const NodeId n = 50 + static_cast<NodeId>(rng.below(950));
        auto g = random_graph(rng, n, 0.02);
        DomainSet unreliable;
        for (NodeId u = 0; u < n; ++u)
            if (rng.bernoulli(0.2)) unreliable.push_back(u);
        const std::uint32_t beta = 1 + static_cast<std::uint32_t>(rng.below(4));

        std::set<NodeId> unrel_set(unreliable.begin(), unreliable.end());
        DomainSet expected;
        for (NodeId s = 0; s < n; ++s) {
            std::uint32_t hits = 0;
            for (NodeId t : g.outlinks(s)) hits += unrel_set.count(t);
            if (hits >= beta) expected.push_back(s);
        }
        CHECK(identify_link_schemes_binary(g, unreliable, beta) == expected);
    }
}

namespace {

PlantedSpec farm_spec() {
    PlantedSpec spec;
    spec.reliable_count = 100;
    spec.mixed_count = 250;
    spec.unreliable_count = 250;
    spec.scheme_count = 20;
    spec.background_count = 1400;
    spec.scheme_links_per_target = 600;
    spec.scheme_crosslinks = 19;
    spec.background_links_per_node = 10;
    spec.skew = 0.9;
    spec.rng_seed = 2718;
    return spec;
}

} // namespace

TEST_CASE("identify binary: planted farm recovered exactly") {
    auto planted = generate_planted_graph(farm_spec());
    const DomainSet unreliable = planted.unreliable_ids();

    // paper-style operating point: schemes hit ~250 unreliable targets, threshold 200
    auto at_200 = identify_link_schemes_binary(planted.graph, unreliable, 200);
    CHECK(at_200 == planted.true_schemes);

    // precision = recall = 1 at 0.8 x |unreliable|
    const auto beta = static_cast<std::uint32_t>(0.8 * static_cast<double>(unreliable.size()));
    auto at_fraction = identify_link_schemes_binary(planted.graph, unreliable, beta);
    CHECK(at_fraction == planted.true_schemes);
}

TEST_CASE("atr_extend: selection modes and seed containment") {
    auto g = WebGraph::from_edges(3, {{1, 0}, {2, 0}});
    RankingParams params;
    params.threads = 1;
    const DomainSet seeds{0};

    AtrSelection top1;
    top1.top_k = 1;
    CHECK(atr_extend(g, seeds, params, top1) == seeds); // seed is the unique top scorer

    AtrSelection above_one;
    above_one.score_threshold = 1.1;
    CHECK(atr_extend(g, seeds, params, above_one) == seeds); // no score can exceed 1

    AtrSelection everything;
    everything.top_k = 3;
    auto extended = atr_extend(g, seeds, params, everything);
    CHECK(extended == DomainSet{0, 1, 2});

    AtrSelection none;
    CHECK_THROWS_AS(atr_extend(g, seeds, params, none), ValidationError);
    AtrSelection both;
    both.top_k = 1;
    both.score_threshold = 0.5;
    CHECK_THROWS_AS(atr_extend(g, seeds, params, both), ValidationError);
    AtrSelection too_many;
    too_many.top_k = 4;
    CHECK_THROWS_AS(atr_extend(g, seeds, params, too_many), ValidationError);
    AtrSelection nonpositive;
    nonpositive.score_threshold = 0.0;
    CHECK_THROWS_AS(atr_extend(g, seeds, params, nonpositive), ValidationError);
}

TEST_CASE("atr_extend: output always contains the seed set") {
    Rng rng(42);
    auto g = random_graph(rng, 60, 0.08);
    RankingParams params;
    params.threads = 1;
    DomainSet seeds{3, 17, 44};
    for (std::uint64_t k : {std::uint64_t{0}, std::uint64_t{5}, std::uint64_t{60}}) {
        AtrSelection sel;
        sel.top_k = k;
        auto out = atr_extend(g, seeds, params, sel);
        for (NodeId s : seeds) CHECK(std::binary_search(out.begin(), out.end(), s));
    }
}

TEST_CASE("atr_extend: cross-linked planted farm recovered from half the schemes") {
    auto planted = generate_planted_graph(farm_spec());
    DomainSet half;
    for (std::size_t i = 0; i < planted.true_schemes.size() / 2; ++i)
        half.push_back(planted.true_schemes[i]);

    RankingParams params;
    params.threads = 1;
    AtrSelection sel;
    sel.top_k = planted.true_schemes.size();
    auto extended = atr_extend(planted.graph, half, params, sel);
    CHECK(extended == planted.true_schemes);
}

TEST_CASE("multi_category_intersect") {
    ScoreVector a, b;
    a.scores = {2e-4, 5e-5};
    b.scores = {3e-4, 2e-4};
    CHECK(multi_category_intersect(a, b, 1e-4) == DomainSet{0});
    CHECK(multi_category_intersect(a, b, 1.0).empty());

    // idempotence: a == b reduces to single-vector thresholding
    auto self = multi_category_intersect(a, a, 1e-4);
    DomainSet expected;
    for (NodeId u = 0; u < a.size(); ++u)
        if (a.scores[u] > 1e-4) expected.push_back(u);
    CHECK(self == expected);

    ScoreVector mismatched;
    mismatched.scores = {0.1};
    CHECK_THROWS_AS(multi_category_intersect(a, mismatched, 1e-4), ValidationError);
    CHECK_THROWS_AS(multi_category_intersect(a, b, 0.0), ValidationError);
}

TEST_CASE("multi_category_intersect: subset of each single-category set") {
    Rng rng(7);
    ScoreVector a, b;
    for (int i = 0; i < 100; ++i) {
        a.scores.push_back(rng.unit() * 1e-3);
        b.scores.push_back(rng.unit() * 1e-3);
    }
    auto both = multi_category_intersect(a, b, 1e-4);
    for (NodeId u : both) {
        CHECK(a.scores[u] > 1e-4);
        CHECK(b.scores[u] > 1e-4);
    }
}

TEST_CASE("top_k_by_score") {
    ScoreVector s;
    s.scores = {0.5, 0.3, 0.2};
    CHECK(top_k_by_score(s, 2) == DomainSet{0, 1});
    CHECK(top_k_by_score(s, 3) == DomainSet{0, 1, 2});
    CHECK_THROWS_AS(top_k_by_score(s, 4), ValidationError);

    ScoreVector tied;
    tied.scores = {0.2, 0.4, 0.4, 0.4};
    CHECK(top_k_by_score(tied, 2) == DomainSet{1, 2}); // lower id wins at the cut
}

TEST_CASE("sample_labels: deterministic, fraction bounds, empty class") {
    LabelTable labels;
    for (int i = 0; i < 100; ++i)
        labels.add({"unrel" + std::to_string(i) + ".com", Reliability::unreliable, std::nullopt});
    for (int i = 0; i < 10; ++i)
        labels.add({"rel" + std::to_string(i) + ".com", Reliability::reliable, std::nullopt});

    auto a = sample_labels(labels, Reliability::unreliable, 0.2, 42);
    auto b = sample_labels(labels, Reliability::unreliable, 0.2, 42);
    REQUIRE(a.rows().size() == 20);
    for (std::size_t i = 0; i < a.rows().size(); ++i)
        CHECK(a.rows()[i].domain == b.rows()[i].domain);
    for (const auto& row : a.rows()) CHECK(row.reliability == Reliability::unreliable);

    auto different_seed = sample_labels(labels, Reliability::unreliable, 0.2, 43);
    bool identical = true;
    for (std::size_t i = 0; i < a.rows().size(); ++i)
        identical = identical && a.rows()[i].domain == different_seed.rows()[i].domain;
    CHECK_FALSE(identical);

    auto everything = sample_labels(labels, Reliability::unreliable, 1.0, 1);
    CHECK(everything.rows().size() == 100);

    CHECK_THROWS_AS(sample_labels(labels, Reliability::mixed, 0.2, 1), ValidationError);
    CHECK_THROWS_AS(sample_labels(labels, Reliability::reliable, 0.0, 1), ValidationError);
}
