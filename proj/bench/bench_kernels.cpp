// Serial reference against the fast and parallel kernels.

#include "tropical/cells.hpp"
#include "tropical/chip.hpp"
#include "tropical/harness.hpp"
#include "tropical/random.hpp"
#include "tropical/rank.hpp"

#include <benchmark/benchmark.h>

using namespace tropical;

namespace {

// n-cycle with one chord per 5 vertices; chips piled on one vertex.
Graph ring(int n) {
    std::vector<std::string> ids;
    for (int v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
    std::vector<EdgeSpec> edges;
    for (int v = 0; v < n; ++v) edges.push_back({"r" + std::to_string(v), ids[v], ids[(v + 1) % n]});
    for (int v = 0; v + 2 < n; v += 5) edges.push_back({"c" + std::to_string(v), ids[v], ids[v + 2]});
    return Graph(ids, edges);
}

ChipConfiguration pile(const Graph& g, std::int64_t chips) {
    std::vector<std::int64_t> c(g.vertex_count(), 0);
    c[g.vertex_count() / 2] = chips;
    c[1] = -chips / 3;
    return ChipConfiguration{c};
}

void BM_DharFast(benchmark::State& state) {
    Graph graph = ring(static_cast<int>(state.range(0)));
    ChipGraph g(graph);
    ChipConfiguration c = pile(graph, 4 * state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dhar_reduce(g, c, 0));
}

void BM_DharReference(benchmark::State& state) {
    Graph graph = ring(static_cast<int>(state.range(0)));
    ChipGraph g(graph);
    ChipConfiguration c = pile(graph, 4 * state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dhar_reduce_reference(g, c, 0));
}

Divisor rank_input() {
    auto g = make_graph({"P", "Q", "R"}, {{"a", "P", "Q", "3"}, {"b", "Q", "R", "2"}, {"c", "R", "P", "2"},
                                         {"d", "P", "Q", "2"}, {"e", "Q", "R", "3"}});
    Divisor d(g);
    d.add_point(GraphPoint::at_vertex(0), 4).add_point(GraphPoint::at_vertex(1), 3).add_point(GraphPoint::at_vertex(2), 2);
    return d;
}

void BM_DiscreteRank(benchmark::State& state) {
    Divisor d = rank_input();
    RankOptions options;
    options.candidates = CandidatePoints::All;
    options.execution = state.range(0) ? Execution::Parallel : Execution::Serial;
    for (auto _ : state) benchmark::DoNotOptimize(discrete_rank(d, options).rank);
}

void BM_CellsCanonical(benchmark::State& state) {
    auto g = make_graph({"P", "Q"}, {{"a", "P", "P", "2"}, {"e", "P", "Q", "1"}, {"b", "Q", "Q", "2"}});
    Divisor k = canonical(g);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_cells(k).cells.size());
}

void BM_Campaign(benchmark::State& state) {
    CampaignConfig config;
    config.seed = 7;
    config.instances = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_campaign(config).passed);
}

}  // namespace

BENCHMARK(BM_DharFast)->Arg(50)->Arg(200)->Arg(400);
BENCHMARK(BM_DharReference)->Arg(50)->Arg(200);
BENCHMARK(BM_DiscreteRank)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CellsCanonical)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Campaign)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
