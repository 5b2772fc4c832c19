#include "support.hpp"

#include "tropical/random.hpp"

#include <doctest.h>

using namespace tropical;

namespace {

ChipConfiguration config(std::vector<std::int64_t> chips) { return ChipConfiguration{std::move(chips)}; }

Graph triangle() { return fixtures::simple_graph(3, {{0, 1}, {1, 2}, {2, 0}}); }

}  // namespace

TEST_CASE("chip graph rejects loops") {
    Graph g({"a"}, {{"l", "a", "a"}});
    CHECK_THROWS_AS(ChipGraph{g}, InvalidArgument);
}

TEST_CASE("reduced configurations are fixed points") {
    Graph t = triangle();
    ChipGraph g(t);
    ChipConfiguration b = config({0, 1, 0});
    CHECK(is_reduced(g, b, 0));
    CHECK(dhar_reduce(g, b, 0) == b);
    oracle::Lattice l(t);
    CHECK(oracle::reduced_by_subsets(l, b.chips, 0));
}

TEST_CASE("triangle with three chips on B") {
    Graph t = triangle();
    ChipGraph g(t);
    oracle::Lattice l(t);
    ChipConfiguration c = config({0, 3, 0});
    ChipConfiguration r = dhar_reduce(g, c, 0);
    auto by_firing = oracle::reduced_by_firing(l, c.chips, 0, 6);
    REQUIRE(by_firing.size() == 1);
    CHECK(r.chips == by_firing[0]);
    CHECK(r.chips == std::vector<std::int64_t>{3, 0, 0});
}

TEST_CASE("wins_effective examples") {
    Graph t = triangle();
    ChipGraph g(t);
    CHECK(wins_effective(g, config({1, 0, 2}), 0));
    CHECK(wins_effective(g, config({0, 0, 2}), 0));
    CHECK_FALSE(wins_effective(g, config({0, 0, -1}), 0));
    CHECK_FALSE(wins_effective(g, config({3, -4, 0}), 1));
    // A - B on a cycle.
    CHECK_FALSE(wins_effective(g, config({1, -1, 0}), 0));
    CHECK_FALSE(wins_effective(g, config({1, -1, 0}), 2));
}

TEST_CASE("bad input is rejected") {
    ChipGraph g(triangle());
    CHECK_THROWS_AS(dhar_reduce(g, config({1, 2}), 0), InvalidArgument);
    CHECK_THROWS_AS(dhar_reduce(g, config({1, 2, 3}), 5), InvalidArgument);
}

TEST_CASE("fast and reference reductions agree with the lattice oracle on random graphs") {
    Rng rng(17);
    for (int round = 0; round < 150; ++round) {
        int n = static_cast<int>(rng.uniform(2, 6));
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng.uniform(0, v - 1)), v});
        int extra = static_cast<int>(rng.uniform(0, 3));
        for (int i = 0; i < extra; ++i) {
            int a = static_cast<int>(rng.uniform(0, n - 1)), b = static_cast<int>(rng.uniform(0, n - 1));
            if (a != b) edges.push_back({a, b});
        }
        Graph graph = fixtures::simple_graph(n, edges);
        ChipGraph g(graph);
        oracle::Lattice l(graph);
        std::vector<std::int64_t> chips(n);
        for (auto& x : chips) x = rng.uniform(-4, 5);
        ChipConfiguration c{chips};
        VertexIndex q = static_cast<VertexIndex>(rng.uniform(0, n - 1));

        Reduction fast = dhar_reduce_with_script(g, c, q);
        Reduction slow = dhar_reduce_reference(g, c, q);
        CHECK(fast.reduced == slow.reduced);
        CHECK(apply_script(g, c, fast.script) == fast.reduced);
        CHECK(apply_script(g, c, slow.script) == slow.reduced);
        CHECK(is_reduced(g, fast.reduced, q));
        auto forms = oracle::reduced_forms(l, chips, q);
        REQUIRE(forms.size() == 1);
        CHECK(fast.reduced.chips == forms[0]);
        CHECK(wins_effective(g, c, q) == oracle::equivalent_to_effective(l, chips));
        CHECK(fast.reduced.degree() == c.degree());
    }
}

TEST_CASE("is_reduced agrees with the subset definition") {
    Rng rng(4);
    Graph graph = fixtures::simple_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 2}});
    ChipGraph g(graph);
    oracle::Lattice l(graph);
    for (int round = 0; round < 300; ++round) {
        std::vector<std::int64_t> chips(4);
        for (auto& x : chips) x = rng.uniform(-1, 3);
        VertexIndex q = static_cast<VertexIndex>(rng.uniform(0, 3));
        CHECK(is_reduced(g, ChipConfiguration{chips}, q) == oracle::reduced_by_subsets(l, chips, q));
    }
}

TEST_CASE("long chains take bulk firings") {
    // A cycle of 400 unit edges: the fast path must move chips along whole
    // chains and still agree with the reference.
    std::vector<std::pair<int, int>> edges;
    const int n = 400;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    Graph graph = fixtures::simple_graph(n, edges);
    ChipGraph g(graph);
    std::vector<std::int64_t> chips(n, 0);
    chips[n / 2] = 3;
    chips[n / 3] = -1;
    chips[7] = 1;
    Reduction fast = dhar_reduce_with_script(g, ChipConfiguration{chips}, 0);
    Reduction slow = dhar_reduce_reference(g, ChipConfiguration{chips}, 0);
    CHECK(fast.reduced == slow.reduced);
    CHECK(apply_script(g, ChipConfiguration{chips}, fast.script) == fast.reduced);
}
