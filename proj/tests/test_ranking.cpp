#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wgtk/ranking.hpp"

#include <cstring>

using namespace wgtk;
using namespace wgtk::testing;

namespace {
RankingParams tight_serial() {
    RankingParams p;
    p.tolerance = 1e-14;
    p.max_iterations = 2000;
    p.threads = 1;
    return p;
}
} // namespace

TEST_CASE("pagerank: 2-node cycle is uniform") {
    auto g = WebGraph::from_edges(2, {{0, 1}, {1, 0}});
    auto s = pagerank(g, tight_serial());
    CHECK(s.scores[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.scores[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.converged);
}

TEST_CASE("pagerank: single dangling node keeps all mass") {
    auto g = WebGraph::from_edges(1, {});
    auto s = pagerank(g, tight_serial());
    CHECK(s.scores[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pagerank: chain 0->1->2 matches dense-oracle fixed point") {
    // frozen from the dense 1000-iteration oracle (t = 1/5.4225)
    auto g = WebGraph::from_edges(3, {{0, 1}, {1, 2}});
    auto s = pagerank(g, tight_serial());
    CHECK(s.scores[0] == doctest::Approx(0.18441678192715538).epsilon(1e-9));
    CHECK(s.scores[1] == doctest::Approx(0.34117104656523745).epsilon(1e-9));
    CHECK(s.scores[2] == doctest::Approx(0.47441217150760717).epsilon(1e-9));
    CHECK(s.scores[2] > s.scores[1]);
    CHECK(s.scores[1] > s.scores[0]);

    auto oracle = dense_pagerank_oracle(adjacency_of(g), uniform_teleport(3), 0.85);
    CHECK(l1_distance(s.scores, oracle) < 1e-12);
}

TEST_CASE("pagerank: dense oracle equivalence on random small graphs") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const NodeId n = 1 + static_cast<NodeId>(rng.below(12));
        auto g = random_graph(rng, n, 0.25);
        auto s = pagerank(g, tight_serial());
        auto oracle = dense_pagerank_oracle(adjacency_of(g), uniform_teleport(n), 0.85);
        CHECK(l1_distance(s.scores, oracle) < 1e-9);
        double total = 0.0;
        for (double v : s.scores) {
            CHECK(v >= 0.0);
            total += v;
        }
        CHECK(std::abs(total - 1.0) < 1e-9);
    }
}

TEST_CASE("ppr: full uniform seed set equals pagerank") {
    Rng rng(31);
    auto g = random_graph(rng, 25, 0.15);
    std::vector<NodeId> all(25);
    for (NodeId i = 0; i < 25; ++i) all[i] = i;
    auto a = personalized_pagerank(g, all, tight_serial());
    auto b = pagerank(g, tight_serial());
    CHECK(l1_distance(a.scores, b.scores) < 1e-12);
}

TEST_CASE("ppr: 2-node cycle seeded at 0") {
    auto g = WebGraph::from_edges(2, {{0, 1}, {1, 0}});
    auto s = personalized_pagerank(g, std::vector<NodeId>{0}, tight_serial());
    // frozen: x0 = 0.15/(1-0.85^2) normalized
    CHECK(s.scores[0] == doctest::Approx(0.5405405405405406).epsilon(1e-9));
    CHECK(s.scores[1] == doctest::Approx(0.4594594594594595).epsilon(1e-9));
}

TEST_CASE("ppr: empty or invalid seeds rejected") {
    auto g = WebGraph::from_edges(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(personalized_pagerank(g, std::vector<NodeId>{}, tight_serial()),
                    ValidationError);
    CHECK_THROWS_AS(personalized_pagerank(g, std::vector<NodeId>{9}, tight_serial()),
                    ValidationError);
}

TEST_CASE("atr: definitional identity with ppr on the reversed graph") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const NodeId n = 3 + static_cast<NodeId>(rng.below(20));
        auto g = random_graph(rng, n, 0.2);
        std::vector<NodeId> seeds{0, static_cast<NodeId>(n - 1)};
        auto a = anti_trustrank(g, seeds, tight_serial());
        auto b = personalized_pagerank(g.reversed(), seeds, tight_serial());
        REQUIRE(a.scores.size() == b.scores.size());
        CHECK(std::memcmp(a.scores.data(), b.scores.data(),
                          a.scores.size() * sizeof(double)) == 0);
    }
}

TEST_CASE("atr: single edge seeded at target") {
    auto g = WebGraph::from_edges(2, {{0, 1}});
    auto s = anti_trustrank(g, std::vector<NodeId>{1}, tight_serial());
    // frozen: reversed graph {1->0} with dangling mass returning to the seed
    CHECK(s.scores[0] == doctest::Approx(0.4594594594594595).epsilon(1e-9));
    CHECK(s.scores[1] == doctest::Approx(0.5405405405405406).epsilon(1e-9));
}

TEST_CASE("inverse_ppr: empty exclusion equals pagerank") {
    Rng rng(55);
    auto g = random_graph(rng, 20, 0.15);
    auto a = inverse_ppr(g, std::vector<NodeId>{}, tight_serial());
    auto b = pagerank(g, tight_serial());
    CHECK(l1_distance(a.scores, b.scores) < 1e-12);
}

TEST_CASE("inverse_ppr: 2-node cycle excluding 0 mirrors the ppr example") {
    auto g = WebGraph::from_edges(2, {{0, 1}, {1, 0}});
    auto s = inverse_ppr(g, std::vector<NodeId>{0}, tight_serial());
    CHECK(s.scores[0] == doctest::Approx(0.4594594594594595).epsilon(1e-9));
    CHECK(s.scores[1] == doctest::Approx(0.5405405405405406).epsilon(1e-9));
}

TEST_CASE("inverse_ppr: excluding every node rejected") {
    auto g = WebGraph::from_edges(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(inverse_ppr(g, std::vector<NodeId>{0, 1}, tight_serial()), ValidationError);
}

TEST_CASE("kernels: teleported mass stays normalized with zero-teleport dangling nodes") {
    // node 2 dangling and excluded: its mass must flow back per the teleport
    auto g = WebGraph::from_edges(3, {{0, 1}, {1, 2}});
    auto s = inverse_ppr(g, std::vector<NodeId>{2}, tight_serial());
    double total = 0.0;
    for (double v : s.scores) total += v;
    CHECK(std::abs(total - 1.0) < 1e-12);
    auto oracle = dense_pagerank_oracle(adjacency_of(g), {0.5, 0.5, 0.0}, 0.85);
    CHECK(l1_distance(s.scores, oracle) < 1e-9);
}

TEST_CASE("pagerank: empty graph and bad params rejected") {
    WebGraph empty;
    CHECK_THROWS_AS(pagerank(empty), ValidationError);
    auto g = WebGraph::from_edges(2, {{0, 1}});
    RankingParams bad;
    bad.damping = 1.0;
    CHECK_THROWS_AS(pagerank(g, bad), ValidationError);
    bad = RankingParams{};
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(pagerank(g, bad), ValidationError);
    bad = RankingParams{};
    bad.max_iterations = 0;
    CHECK_THROWS_AS(pagerank(g, bad), ValidationError);
}

TEST_CASE("pagerank: non-convergence is reported, not fatal") {
    Rng rng(8);
    auto g = random_graph(rng, 50, 0.1);
    RankingParams p;
    p.tolerance = 1e-15;
    p.max_iterations = 3;
    p.threads = 1;
    auto s = pagerank(g, p);
    CHECK_FALSE(s.converged);
    CHECK(s.iterations_used == 3);
    CHECK(s.residual > p.tolerance);
}

TEST_CASE("parallel execution matches serial within 1e-10 per component") {
    Rng rng(404);
    for (int trial = 0; trial < 5; ++trial) {
        const NodeId n = 50 + static_cast<NodeId>(rng.below(200));
        auto g = random_graph(rng, n, 0.05);
        RankingParams serial = tight_serial();
        RankingParams parallel = serial;
        parallel.threads = 4;
        auto a = pagerank(g, serial);
        auto b = pagerank(g, parallel);
        for (NodeId u = 0; u < n; ++u)
            CHECK(std::abs(a.scores[u] - b.scores[u]) <= 1e-10);
    }
}

TEST_CASE("serial execution is bit-deterministic") {
    Rng rng(11);
    auto g = random_graph(rng, 80, 0.08);
    auto a = pagerank(g, tight_serial());
    auto b = pagerank(g, tight_serial());
    CHECK(std::memcmp(a.scores.data(), b.scores.data(), a.scores.size() * sizeof(double)) == 0);
}

TEST_CASE("rank_positions: ordering, ties, uniform") {
    ScoreVector s;
    s.scores = {0.5, 0.3, 0.2};
    CHECK(rank_positions(s) == std::vector<std::uint32_t>{1, 2, 3});

    s.scores = {0.4, 0.4, 0.2};
    CHECK(rank_positions(s) == std::vector<std::uint32_t>{1, 2, 3}); // tie by id

    s.scores = {0.25, 0.25, 0.25, 0.25};
    CHECK(rank_positions(s) == std::vector<std::uint32_t>{1, 2, 3, 4});

    s.scores = {0.2, 0.5, 0.3};
    CHECK(rank_positions(s) == std::vector<std::uint32_t>{3, 1, 2});
}

TEST_CASE("rank_positions: invariant under positive rescaling") {
    Rng rng(21);
    ScoreVector s;
    for (int i = 0; i < 40; ++i) s.scores.push_back(rng.unit());
    auto base = rank_positions(s);
    ScoreVector scaled;
    for (double v : s.scores) scaled.scores.push_back(v * 3.75);
    CHECK(rank_positions(scaled) == base);
}

TEST_CASE("score persistence: csv ordering and binary round trip") {
    TempDir dir("wgtk-rank");
    VertexTable vertices;
    vertices.add("com.a");
    vertices.add("com.b");
    vertices.add("com.c");
    ScoreVector s;
    s.scores = {0.2, 0.5, 0.3};

    write_scores_csv(dir.file("scores.csv"), vertices, s);
    auto rows = read_scores_csv(dir.file("scores.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].first == "com.b"); // descending score
    CHECK(rows[0].second == 0.5);
    CHECK(rows[2].first == "com.a");

    write_scores_binary(dir.file("scores.bin"), s);
    auto back = read_scores_binary(dir.file("scores.bin"));
    REQUIRE(back.scores.size() == 3);
    CHECK(std::memcmp(back.scores.data(), s.scores.data(), 3 * sizeof(double)) == 0);

    const std::string raw = slurp(dir.file("scores.bin"));
    REQUIRE(raw.size() == 16 + 3 * 8);
    CHECK(raw.compare(0, 8, "WGSCORE1") == 0);

    auto positions = rank_positions(s);
    write_ranks_csv(dir.file("ranks.csv"), vertices, positions);
    CHECK(slurp(dir.file("ranks.csv")) ==
          "domain,position\ncom.b,1\ncom.c,2\ncom.a,3\n");
}
