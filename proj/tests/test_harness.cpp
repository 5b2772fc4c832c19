#include "support.hpp"

#include "tropical/harness.hpp"
#include "tropical/random.hpp"

#include <doctest.h>

using namespace tropical;
using fixtures::point;
using fixtures::vertex;

TEST_CASE("instances are deterministic in seed and index") {
    CampaignConfig c;
    c.seed = 99;
    for (std::size_t i = 0; i < 20; ++i) {
        Instance a = random_instance(c, i);
        Instance b = random_instance(c, i);
        CHECK(graph_hash(*a.curve) == graph_hash(*b.curve));
        CHECK(to_string(a.divisor) == to_string(b.divisor));
    }
    CampaignConfig other = c;
    other.seed = 100;
    int differ = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        if (graph_hash(*random_instance(c, i).curve) != graph_hash(*random_instance(other, i).curve)) ++differ;
    }
    CHECK(differ > 10);
}

TEST_CASE("instances respect the configured ranges") {
    CampaignConfig c;
    c.seed = 4;
    c.genus = {0, 0};
    c.degree = {-1, -1};
    for (std::size_t i = 0; i < 30; ++i) {
        Instance inst = random_instance(c, i);
        CHECK(genus(*inst.curve) == 0);
        CHECK(inst.divisor.degree() == -1);
        CHECK(tropical_rank(inst.divisor).rank == -1);
    }
    CampaignConfig d;
    d.seed = 6;
    for (std::size_t i = 0; i < 60; ++i) {
        Instance inst = random_instance(d, i);
        const MetricGraph& g = *inst.curve;
        CHECK(genus(g) <= 3);
        std::size_t finite = 0, ends = 0;
        for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) {
            if (g.is_infinite(e)) {
                ++ends;
            } else {
                ++finite;
                CHECK(g.length(e).value().get_den() <= 4);
            }
        }
        CHECK(finite <= 6);
        CHECK(ends <= 2);
        CHECK(inst.divisor.degree() >= -3);
        CHECK(inst.divisor.degree() <= 6);
        for (const auto& p : inst.divisor.support()) {
            if (!p.is_vertex() && !g.is_infinite(p.edge())) {
                CHECK(Rational(p.offset() / g.length(p.edge()).value()).get_den() <= 4);
            }
        }
    }
}

TEST_CASE("verify_rr examples") {
    auto g = fixtures::dumbbell();
    CHECK(rr_line(verify_rr(canonical(g))) == "1 - 0 = 2 + 1 - 2 PASS");
    auto seg = fixtures::segment();
    CHECK(rr_line(verify_rr(Divisor(seg))) == "0 - -1 = 0 + 1 - 0 PASS");
    auto loop = fixtures::unit_loop();
    CHECK(rr_line(verify_rr(Divisor(loop))) == "0 - 0 = 0 + 1 - 1 PASS");
    RankOptions capped;
    capped.scale_cap = 1;
    CHECK(verify_rr(canonical(g), capped).verdict == Verdict::Inconclusive);
}

TEST_CASE("fixture campaign over the dumbbell, the loop and the segment") {
    std::vector<Divisor> ds;
    auto g = fixtures::dumbbell();
    ds.push_back(canonical(g));
    ds.push_back(fixtures::divisor(g, {{point(*g, "a", "1"), 1}, {point(*g, "b", "1/2"), 1}}));
    ds.push_back(fixtures::divisor(g, {{point(*g, "e", "1/3"), 3}, {vertex(*g, "Q"), -1}}));
    auto loop = fixtures::unit_loop();
    ds.push_back(fixtures::divisor(loop, {{point(*loop, "l", "1/3"), 2}}));
    ds.push_back(fixtures::divisor(loop, {{point(*loop, "l", "1/3"), 1}, {vertex(*loop, "v"), -1}}));
    auto seg = fixtures::segment("3/2");
    ds.push_back(fixtures::divisor(seg, {{point(*seg, "s", "1/2"), 2}, {vertex(*seg, "B"), -3}}));
    ds.push_back(fixtures::divisor(seg, {{point(*seg, "s", "1/4"), 4}}));
    for (const auto& d : ds) {
        InstanceRecord r = verify_rr(d);
        CAPTURE(to_string(d));
        CHECK(r.verdict == Verdict::Pass);
    }
}

TEST_CASE("empty campaign passes") {
    CampaignConfig c;
    c.instances = 0;
    CampaignReport r = run_campaign(c);
    CHECK(r.records.empty());
    CHECK(r.failed == 0);
    CHECK(r.inconclusive == 0);
}

TEST_CASE("campaign reports are deterministic") {
    CampaignConfig c;
    c.seed = 123;
    c.instances = 25;
    CampaignReport a = run_campaign(c);
    CampaignReport b = run_campaign(c);
    REQUIRE(a.records.size() == 25);
    for (std::size_t i = 0; i < 25; ++i) {
        CHECK(a.records[i].index == i);
        CHECK(a.records[i].graph_hash == b.records[i].graph_hash);
        CHECK(rr_line(a.records[i]) == rr_line(b.records[i]));
    }
    CHECK(a.failed == 0);
}

TEST_CASE("degree shift and duality") {
    CampaignConfig c;
    c.seed = 8;
    c.edges = {1, 4};
    c.degree = {-2, 4};
    for (std::size_t i = 0; i < 30; ++i) {
        Instance inst = random_instance(c, i);
        InstanceRecord r = verify_rr(inst.divisor);
        REQUIRE(r.stabilized);
        VertexIndex v = 0;
        while (inst.curve->is_end(v)) ++v;
        Divisor more = inst.divisor + fixtures::divisor(inst.curve, {{GraphPoint::at_vertex(v), 1}});
        InstanceRecord s = verify_rr(more);
        CHECK(s.degree == r.degree + 1);
        CHECK((s.rank_d == r.rank_d || s.rank_d == r.rank_d + 1));
        InstanceRecord dual = verify_rr(canonical(inst.curve) - inst.divisor);
        CHECK((dual.verdict == Verdict::Pass) == (r.verdict == Verdict::Pass));
        CHECK(dual.rank_d == r.rank_k_minus_d);
    }
}

TEST_CASE("configuration validation") {
    CampaignConfig c;
    c.genus = {2, 1};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = CampaignConfig{};
    c.scale_cap = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = CampaignConfig{};
    c.degree = {1, 0};
    CHECK_THROWS_AS(run_campaign(c), InvalidArgument);
}

TEST_CASE("graph hash depends on lengths") {
    CHECK(graph_hash(*fixtures::dumbbell()) == graph_hash(*fixtures::dumbbell()));
    CHECK(graph_hash(*fixtures::dumbbell()) != graph_hash(*fixtures::dumbbell("3")));
    CHECK(graph_hash(*fixtures::dumbbell()).size() == 16);
}
