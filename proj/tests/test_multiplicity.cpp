#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wgtk/multiplicity.hpp"
#include "wgtk/tuning.hpp"

using namespace wgtk;
using namespace wgtk::testing;

TEST_CASE("ingest_url_pairs: filetype filter is case-insensitive") {
    TempDir dir("wgtk-mult");
    write_file(dir.file("pairs.csv"),
               "source_domain,source_url,dest_url\n"
               "a.com,https://a.com/p1,https://x.com/a.css\n"
               "a.com,https://a.com/p2,https://x.com/a.html\n"
               "a.com,https://a.com/p3,https://x.com/A.JPG\n"
               "a.com,https://a.com/p4,https://x.com/img.png\n"
               "a.com,https://a.com/p5,https://x.com/lib.js\n");
    auto table = ingest_url_pairs(dir.file("pairs.csv"));
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].dest_url == "https://x.com/a.html");
    CHECK(table.dropped_filetype == 4);

    write_file(dir.file("bad.csv"), "source_domain,source_url,dest_url\nonlyonefield\n");
    CHECK_THROWS_AS(ingest_url_pairs(dir.file("bad.csv")), ValidationError);
}

TEST_CASE("compute_multiplicity: exact counts per (source, dest_url)") {
    UrlPairTable pairs;
    for (int i = 0; i < 50; ++i)
        pairs.rows.push_back({"a.com", "https://a.com/p" + std::to_string(i), "https://u.com/x"});
    pairs.rows.push_back({"a.com", "https://a.com/q", "https://u.com/y"});

    auto m = compute_multiplicity(pairs);
    REQUIRE(m.size() == 2);
    CHECK(m.at({"a.com", "https://u.com/x"}) == 50);
    CHECK(m.at({"a.com", "https://u.com/y"}) == 1);

    std::uint64_t total = 0;
    for (const auto& [key, mult] : m) total += mult;
    CHECK(total == pairs.rows.size());
}

TEST_CASE("score_multiplicity: minmax endpoints, midpoint, degenerate table") {
    MultiplicityTable endpoints;
    endpoints[{"a.com", "u1"}] = 1;
    endpoints[{"a.com", "u2"}] = 50;
    auto scores = score_multiplicity(endpoints, ScaleParams{0.0, 2.0});
    REQUIRE(scores.size() == 2);
    for (const auto& p : scores) {
        if (p.multiplicity == 1) CHECK(p.score == doctest::Approx(2.0));
        if (p.multiplicity == 50) CHECK(p.score == doctest::Approx(0.0));
    }

    MultiplicityTable mid;
    mid[{"a.com", "u1"}] = 10;
    mid[{"a.com", "u2"}] = 20; // midpoint of [10, 30]
    mid[{"a.com", "u3"}] = 30;
    for (const auto& p : score_multiplicity(mid, ScaleParams{0.0, 2.0}))
        if (p.multiplicity == 20) CHECK(p.score == doctest::Approx(1.0));

    MultiplicityTable degenerate;
    degenerate[{"a.com", "u1"}] = 7;
    degenerate[{"b.com", "u2"}] = 7;
    for (const auto& p : score_multiplicity(degenerate, ScaleParams{0.0, 2.0}))
        CHECK(p.score == doctest::Approx(1.0));

    CHECK_THROWS_AS(score_multiplicity(MultiplicityTable{}, ScaleParams{}), ValidationError);
    CHECK_THROWS_AS(score_multiplicity(mid, ScaleParams{2.0, 2.0}), ValidationError);
}

TEST_CASE("score_multiplicity: order-reversing and bounded on the 1..50 range") {
    MultiplicityTable m;
    for (std::uint64_t mult = 1; mult <= 50; ++mult)
        m[{"a.com", "u" + std::to_string(mult)}] = mult;
    auto scores = score_multiplicity(m, ScaleParams{0.0, 2.0});
    std::map<std::uint64_t, double> by_mult;
    for (const auto& p : scores) {
        by_mult[p.multiplicity] = p.score;
        CHECK(p.score >= 0.0);
        CHECK(p.score <= 2.0);
    }
    for (std::uint64_t mult = 1; mult < 50; ++mult)
        CHECK(by_mult[mult] > by_mult[mult + 1]);
}

TEST_CASE("aggregate_edge_scores: mean per destination host") {
    std::vector<PairScore> pair_scores = {
        {"a.com", "https://u.com/x", 50, 0.0},
        {"a.com", "https://u.com/y", 1, 2.0},
        {"b.com", "https://u.com/z", 10, 1.5},
    };
    auto table = aggregate_edge_scores(pair_scores, ScaleParams{0.0, 2.0});
    REQUIRE(table.entries.size() == 2);
    const EdgeScore* au = table.find("a.com", "u.com");
    REQUIRE(au != nullptr);
    CHECK(au->score == doctest::Approx(1.0)); // mean of {0, 2}
    CHECK(au->pair_count == 2);
    const EdgeScore* bu = table.find("b.com", "u.com");
    REQUIRE(bu != nullptr);
    CHECK(bu->score == doctest::Approx(1.5)); // single pair keeps its own score
    CHECK(table.find("c.com", "u.com") == nullptr);
}

TEST_CASE("aggregate_edge_scores: means stay inside the scale on random tables") {
    Rng rng(15);
    MultiplicityTable m;
    for (int i = 0; i < 300; ++i) {
        std::string source = "s" + std::to_string(rng.below(10)) + ".com";
        std::string url = "https://d" + std::to_string(rng.below(15)) + ".com/p" +
                          std::to_string(rng.below(40));
        m[{source, url}] = 1 + rng.below(50);
    }
    const ScaleParams scale{0.0, 2.0};
    auto aggregated = aggregate_edge_scores(score_multiplicity(m, scale), scale);
    CHECK(!aggregated.entries.empty());
    for (const auto& e : aggregated.entries) {
        CHECK(e.score >= scale.lower);
        CHECK(e.score <= scale.upper);
    }
}

TEST_CASE("host_of_url") {
    CHECK(host_of_url("https://x.com/a?b") == "x.com");
    CHECK(host_of_url("http://user@y.com:8080/path") == "y.com");
    CHECK(host_of_url("z.com/page") == "z.com");
    CHECK(host_of_url("https://sub.w.com#frag") == "sub.w.com");
}

TEST_CASE("edge score table: csv round trip") {
    TempDir dir("wgtk-mult");
    EdgeScoreTable table;
    table.entries = {{"a.com", "u.com", 1.25, 2}, {"b.com", "v.com", 0.5, 1}};
    table.save(dir.file("scores.csv"));
    auto back = EdgeScoreTable::load(dir.file("scores.csv"));
    REQUIRE(back.entries.size() == 2);
    CHECK(back.find("a.com", "u.com")->score == 1.25);
    CHECK(back.find("b.com", "v.com")->score == 0.5);
}

namespace {

/// Fixture where reliable domains' backlinks are fully network-covered with
/// unit score s_rel, so RP(reliable) = (s_rel * upper)^b1 exactly.
struct TuneFixture {
    AttributeTable attrs;
    WeightedNetwork net;
    EdgeScoreTable unit_scores;
    LabelTable labels;
    RegressionModel model;

    explicit TuneFixture(double unit_score_reliable) {
        attrs.add_column("traffic", {});
        attrs.add_column("rank", {});
        attrs.add_column("backlinks", {});
        attrs.add_column("external_links", {});
        attrs.add_column("html_pages", {});
        model.dependent = "traffic";
        model.regressors = {"backlinks", "external_links", "html_pages"};
        model.intercept = 1.0;
        model.coefficients = {0.3, 0.2, 0.1};
        model.n_used = 15;

        auto add_group = [&](const char* stem, Reliability label, double unit_score) {
            for (int i = 0; i < 5; ++i) {
                std::string domain = std::string(stem) + std::to_string(i) + ".com";
                std::string source = std::string("src-") + domain;
                const double w = 10000.0;
                attrs.add_row(domain, std::vector<double>{1000.0, 50.0, w, 100.0, 100.0});
                net.edges.push_back({source, domain, static_cast<std::uint64_t>(w), 500});
                unit_scores.entries.push_back({source, domain, unit_score, 1});
                labels.add({domain, label, std::nullopt});
            }
        };
        add_group("rel", Reliability::reliable, unit_score_reliable);
        add_group("mix", Reliability::mixed, 0.3);
        add_group("unrel", Reliability::unreliable, 0.1);
        std::sort(unit_scores.entries.begin(), unit_scores.entries.end(),
                  [](const EdgeScore& a, const EdgeScore& b) {
                      return std::tie(a.source, a.target) < std::tie(b.source, b.target);
                  });
    }
};

} // namespace

TEST_CASE("tune_scale: RP(reliable) = 1 exactly at upper = 2") {
    TuneFixture fx(0.5); // (0.5 * 2)^0.3 = 1
    auto result = tune_scale(fx.unit_scores, fx.net, fx.attrs, fx.model, fx.labels,
                             Reliability::reliable);
    CHECK(std::abs(result.rp_reliable - 1.0) <= 1e-3);
    CHECK(result.scale.upper == doctest::Approx(2.0).epsilon(0.01));
    CHECK(result.scale.lower == 0.0);
    CHECK(result.rp_unreliable < result.rp_reliable); // penalty ordering preserved
}

TEST_CASE("tune_scale: RP(reliable) < 1 at upper = 2 pushes the bound higher") {
    TuneFixture fx(0.4); // RP = 1 at upper 2.5
    auto result = tune_scale(fx.unit_scores, fx.net, fx.attrs, fx.model, fx.labels,
                             Reliability::reliable);
    CHECK(result.scale.upper > 2.0);
    CHECK(std::abs(result.rp_reliable - 1.0) <= 1e-3);
    CHECK(result.scale.upper == doctest::Approx(2.5).epsilon(0.01));
}

TEST_CASE("tune_scale: RP is monotone in upper when the backlink coefficient is positive") {
    TuneFixture fx(0.5);
    double previous = 0.0;
    for (double upper : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        auto post = apply_multiplicity_reweight(fx.attrs, fx.net, fx.unit_scores.scaled(upper));
        auto report = predict_retention(fx.model, fx.attrs, post.attrs, fx.labels);
        CHECK(report.rp_reliable > previous);
        previous = report.rp_reliable;
    }
}

TEST_CASE("tune_scale: unbracketed target is an error") {
    // zero scores wipe covered backlinks regardless of upper: RP stays below 1
    TuneFixture fx(0.0);
    CHECK_THROWS_AS(tune_scale(fx.unit_scores, fx.net, fx.attrs, fx.model, fx.labels,
                               Reliability::reliable),
                    ValidationError);
}
