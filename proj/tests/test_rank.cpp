#include "support.hpp"

#include "tropical/random.hpp"
#include "tropical/rank.hpp"

#include <doctest.h>

using namespace tropical;
using fixtures::point;
using fixtures::vertex;

namespace {

std::vector<std::int64_t> chips_of(const UnitSubdivision& sub, const Divisor& d) {
    std::vector<std::int64_t> c(sub.graph.vertex_count(), 0);
    for (const auto& [p, k] : d.terms()) c[sub.vertex_of(p)] += k;
    return c;
}

GraphPtr random_integral_graph(Rng& rng, int max_genus, int max_edges) {
    RandomGraphSpec spec;
    spec.genus = static_cast<int>(rng.uniform(0, max_genus));
    spec.edges = static_cast<int>(rng.uniform(std::max(1, spec.genus), max_edges));
    spec.max_denominator = 1;
    spec.max_length = 3;
    GraphPtr g = random_graph(rng, spec);
    // Loops of length 1 cannot be subdivided; double everything instead.
    for (const auto& edge : g->graph().edges()) {
        if (edge.is_loop() && g->length(g->graph().edge_index(edge.id)).value() == 1) return rescale(g, Rational(2)).graph;
    }
    return g;
}

}  // namespace

TEST_CASE("discrete rank examples") {
    auto tri = fixtures::cycle(3);
    CHECK(discrete_rank(fixtures::divisor(tri, {{vertex(*tri, "c0"), -1}})).rank == -1);
    CHECK(discrete_rank(fixtures::divisor(tri, {{vertex(*tri, "c0"), 2}})).rank == 1);
    auto seg = fixtures::segment();
    CHECK(discrete_rank(fixtures::divisor(seg, {{vertex(*seg, "A"), 1}})).rank == 1);
    CHECK_THROWS_AS(discrete_rank(fixtures::divisor(fixtures::segment("2"), {{point(*fixtures::segment("2"), "s", "1/2"), 1}})),
                    InvalidArgument);
}

TEST_CASE("discrete rank witness") {
    auto tri = fixtures::cycle(3);
    DiscreteRank r = discrete_rank(fixtures::divisor(tri, {{vertex(*tri, "c0"), 1}}));
    CHECK(r.rank == 0);
    CHECK(r.witness.degree() == 1);
    CHECK(r.witness.is_effective());
    CHECK(r.witness == fixtures::divisor(tri, {{vertex(*tri, "c1"), 1}}));
}

TEST_CASE("metric rank on the dumbbell") {
    auto g = fixtures::dumbbell();
    RankReport k = metric_rank(canonical(g));
    CHECK(k.rank == 1);
    CHECK(k.stabilized);
    REQUIRE(k.witness);
    CHECK(k.witness->degree() == 2);
    RankReport pq = metric_rank(fixtures::divisor(g, {{point(*g, "a", "1"), 1}, {point(*g, "b", "1/2"), 1}}));
    CHECK(pq.rank == 0);
    CHECK(pq.stabilized);
    CHECK(metric_rank(Divisor(g)).rank == 0);
    CHECK(metric_rank(Divisor(fixtures::segment())).rank == 0);
    RankReport neg = metric_rank(fixtures::divisor(g, {{vertex(*g, "P"), -2}}));
    CHECK(neg.rank == -1);
    REQUIRE(neg.witness);
    CHECK(neg.witness->is_zero());
}

TEST_CASE("scale schedule") {
    auto g = fixtures::dumbbell("1/2", "1/3");
    RankReport r = metric_rank(canonical(g));
    REQUIRE(r.scales_tested.size() >= 2);
    CHECK(r.scales_tested[0] == 6);
    CHECK(r.scales_tested[1] == 12);
    CHECK(r.rank == 1);
    RankOptions capped;
    capped.scale_cap = 1;
    RankReport one = metric_rank(canonical(g), capped);
    CHECK(one.scales_tested.size() == 1);
    CHECK_FALSE(one.stabilized);
    CHECK(integral_scale(canonical(fixtures::unit_loop())) == 2);
    CHECK(integral_scale(canonical(fixtures::dumbbell())) == 1);
    auto half = fixtures::segment("1/2");
    CHECK(integral_scale(fixtures::divisor(half, {{point(*half, "s", "1/3"), 1}})) == 6);
}

TEST_CASE("tropical rank retracts ends") {
    auto curve = fixtures::loop_with_end();
    CHECK(tropical_rank(fixtures::divisor(curve, {{vertex(*curve, "x0"), 1}})).rank == 0);
    auto star = make_graph({"c", "x", "y", "z"}, {{"r", "c", "x", "inf"}, {"s", "c", "y", "inf"}, {"t", "c", "z", "inf"}});
    CHECK(tropical_rank(fixtures::divisor(star, {{vertex(*star, "y"), 1}})).rank == 1);
    auto g = fixtures::dumbbell();
    CHECK(tropical_rank(canonical(g)).rank == metric_rank(canonical(g)).rank);
    RankReport w = tropical_rank(fixtures::divisor(curve, {{point(*curve, "r0", "3"), 2}}));
    CHECK(w.rank == 1);
    REQUIRE(w.witness);
    CHECK(w.witness->host() == curve);
}

TEST_CASE("linear equivalence") {
    auto g = fixtures::dumbbell();
    Divisor k = canonical(g);
    Equivalence self = linear_equiv(k, k);
    CHECK(self.equivalent);
    auto tri = fixtures::cycle(3);
    CHECK_FALSE(linear_equiv(fixtures::divisor(tri, {{vertex(*tri, "c0"), 1}}),
                             fixtures::divisor(tri, {{vertex(*tri, "c1"), 1}}))
                    .equivalent);
    CHECK_FALSE(linear_equiv(k, Divisor(g)).equivalent);

    // Both chips slide into loop a symmetrically.
    Divisor moved = fixtures::divisor(g, {{point(*g, "a", "1/3"), 1}, {point(*g, "a", "5/3"), 1}});
    Equivalence eq = linear_equiv(k, moved);
    REQUIRE(eq.equivalent);
    REQUIRE(eq.witness);
    CHECK(k + oracle::principal_divisor(*eq.witness) == moved);
    Divisor skew = fixtures::divisor(g, {{point(*g, "a", "1/3"), 1}, {point(*g, "a", "1"), 1}});
    CHECK_FALSE(linear_equiv(k, skew).equivalent);

    auto curve = fixtures::loop_with_end();
    CoreRetraction r = retract_core(curve);
    Divisor k_core = to_curve(canonical(r.core), r);
    Equivalence kk = linear_equiv(canonical(curve), k_core);
    REQUIRE(kk.equivalent);
    CHECK(canonical(curve) + oracle::principal_divisor(*kk.witness) == k_core);
}

TEST_CASE("reduce_divisor is a class invariant") {
    auto g = fixtures::dumbbell();
    Divisor a = fixtures::divisor(g, {{point(*g, "a", "1/3"), 1}, {point(*g, "a", "5/3"), 1}});
    CHECK(reduce_divisor(a) == reduce_divisor(canonical(g)));
    CHECK(reduce_divisor(canonical(g), g->graph().vertex("Q")) == reduce_divisor(a, g->graph().vertex("Q")));
    CHECK(reduce_divisor(canonical(g)) == fixtures::divisor(g, {{vertex(*g, "P"), 2}}));
    auto curve = fixtures::loop_with_end();
    CHECK_THROWS_AS(reduce_divisor(canonical(curve), curve->graph().vertex("x0")), InvalidArgument);
}

TEST_CASE("discrete rank agrees with the brute-force oracle") {
    Rng rng(31);
    int checked = 0;
    while (checked < 40) {
        GraphPtr g = random_integral_graph(rng, 2, 3);
        UnitSubdivision sub = unit_subdivide(g);
        if (sub.graph.vertex_count() > 7) continue;
        Divisor d = random_divisor(rng, g, rng.uniform(-1, 3), 3, 1);
        oracle::Lattice l(sub.graph);
        std::int64_t expected = oracle::rank(l, chips_of(sub, d));
        RankOptions all;
        all.candidates = CandidatePoints::All;
        CHECK(discrete_rank(d).rank == expected);
        CHECK(discrete_rank(d, all).rank == expected);
        ++checked;
    }
}

TEST_CASE("parallel and serial enumeration give the same rank and witness") {
    Rng rng(9);
    for (int round = 0; round < 20; ++round) {
        GraphPtr g = random_integral_graph(rng, 3, 5);
        Divisor d = random_divisor(rng, g, rng.uniform(0, 5), 3, 1);
        RankOptions serial;
        serial.execution = Execution::Serial;
        DiscreteRank a = discrete_rank(d);
        DiscreteRank b = discrete_rank(d, serial);
        CHECK(a.rank == b.rank);
        CHECK(a.witness == b.witness);
    }
}

TEST_CASE("discrete Riemann-Roch on integral graphs") {
    Rng rng(41);
    for (int round = 0; round < 60; ++round) {
        GraphPtr g = random_integral_graph(rng, 3, 5);
        g = rescale(g, Rational(2)).graph;  // lengths > 1
        Divisor d = random_divisor(rng, g, rng.uniform(-2, 2 * genus(*g) + 1), 3, 1);
        std::int64_t lhs = discrete_rank(d).rank - discrete_rank(canonical(g) - d).rank;
        CHECK(lhs == d.degree() + 1 - genus(*g));
    }
}

TEST_CASE("rank monotonicity, bounds and the one-sided scale bound") {
    Rng rng(77);
    for (int round = 0; round < 30; ++round) {
        RandomGraphSpec spec;
        spec.genus = static_cast<int>(rng.uniform(0, 2));
        spec.edges = static_cast<int>(rng.uniform(std::max(1, spec.genus), 4));
        spec.max_denominator = 3;
        GraphPtr g = random_graph(rng, spec);
        Divisor d = random_divisor(rng, g, rng.uniform(-1, 4), 3, 3);
        RankReport r = metric_rank(d);
        REQUIRE(r.stabilized);
        CHECK(r.rank >= -1);
        CHECK(r.rank <= std::max<std::int64_t>(-1, d.degree()));
        GraphPoint p = random_point(rng, *g, 3);
        Divisor less = d - fixtures::divisor(g, {{p, 1}});
        std::int64_t rl = metric_rank(less).rank;
        CHECK(rl <= r.rank);
        CHECK(rl >= r.rank - 1);
        for (auto s : r.scales_tested) {
            Rescaled scaled = rescale(g, Rational(s));
            CHECK(discrete_rank(transport(d, scaled)).rank >= r.rank);
        }
    }
}
