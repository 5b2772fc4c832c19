#include "tropical/random.hpp"

#include <deque>
#include <limits>
#include <set>

namespace tropical {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rational ratio(std::int64_t p, std::int64_t q) {
    Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
    r.canonicalize();
    return r;
}

// Breakpoints starting at (0, 0) with random interior offsets and slopes.
std::vector<Breakpoint> random_segments(Rng& rng, const Rational& length, int max_slope) {
    std::set<Rational> offsets;
    std::int64_t k = rng.uniform(0, 2);
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t b = rng.uniform(2, 4);
        offsets.insert(length * ratio(rng.uniform(1, b - 1), b));
    }
    offsets.insert(length);
    std::vector<Breakpoint> out{{Rational(0), Rational(0)}};
    for (const auto& t : offsets) {
        Rational slope(static_cast<long>(rng.uniform(-max_slope, max_slope)));
        const auto& last = out.back();
        out.push_back({t, last.value + slope * (t - last.offset)});
    }
    return out;
}

}  // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) { return Rng(splitmix(splitmix(seed) ^ splitmix(index + 1))); }

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidArgument("empty range");
    std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(engine_());
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
}

bool Rng::coin(std::int64_t numerator, std::int64_t denominator) { return uniform(1, denominator) <= numerator; }

GraphPtr random_graph(Rng& rng, const RandomGraphSpec& spec) {
    if (spec.genus < 0 || spec.max_denominator < 1 || spec.max_length < 1 || spec.ends < 0) {
        throw InvalidArgument("invalid random graph spec");
    }
    const int edges = std::max(spec.edges, spec.genus);
    const int vertices = edges - spec.genus + 1;
    std::vector<std::string> ids;
    for (int v = 0; v < vertices; ++v) ids.push_back("v" + std::to_string(v));
    std::vector<MetricEdgeSpec> specs;
    auto length = [&]() {
        std::int64_t q = rng.uniform(1, spec.max_denominator);
        std::int64_t p = rng.uniform(1, spec.max_length * q);
        return to_string(ratio(p, q));
    };
    for (int v = 1; v < vertices; ++v) {
        std::int64_t parent = rng.uniform(0, v - 1);
        specs.push_back({"e" + std::to_string(specs.size()), ids[parent], ids[v], length()});
    }
    for (int i = 0; i < spec.genus; ++i) {
        std::int64_t a = rng.uniform(0, vertices - 1);
        std::int64_t b = rng.uniform(0, vertices - 1);
        specs.push_back({"e" + std::to_string(specs.size()), ids[a], ids[b], length()});
    }
    for (int k = 0; k < spec.ends; ++k) {
        std::int64_t at = rng.uniform(0, vertices - 1);
        std::string end = "x" + std::to_string(k);
        specs.push_back({"r" + std::to_string(k), ids[at], end, "inf"});
        ids.push_back(end);
    }
    return make_graph(std::move(ids), specs);
}

GraphPoint random_point(Rng& rng, const MetricGraph& g, int max_denominator, bool allow_unbounded) {
    const Graph& graph = g.graph();
    const std::int64_t total = static_cast<std::int64_t>(graph.vertex_count() + graph.edge_count());
    for (;;) {
        std::int64_t pick = rng.uniform(0, total - 1);
        if (pick < static_cast<std::int64_t>(graph.vertex_count())) {
            auto v = static_cast<VertexIndex>(pick);
            if (g.is_end(v) && !allow_unbounded) continue;
            return GraphPoint::at_vertex(v);
        }
        auto e = static_cast<EdgeIndex>(pick - static_cast<std::int64_t>(graph.vertex_count()));
        if (g.is_infinite(e)) {
            if (!allow_unbounded) continue;
            std::int64_t q = rng.uniform(1, max_denominator);
            return GraphPoint::on_edge(g, e, ratio(rng.uniform(1, 3 * q), q));
        }
        const Rational& len = g.length(e).value();
        if (max_denominator <= 1) {
            if (!is_integer(len) || len < 2) continue;
            return GraphPoint::on_edge(g, e, Rational(static_cast<long>(rng.uniform(1, to_int64(len) - 1))));
        }
        std::int64_t b = rng.uniform(2, max_denominator);
        return GraphPoint::on_edge(g, e, len * ratio(rng.uniform(1, b - 1), b));
    }
}

Divisor random_divisor(Rng& rng, const GraphPtr& g, std::int64_t degree, int support, int max_denominator,
                       bool allow_unbounded) {
    Divisor d(g);
    std::int64_t k = rng.uniform(1, std::max(1, support));
    std::int64_t sum = 0;
    for (std::int64_t i = 0; i + 1 < k; ++i) {
        std::int64_t c = rng.uniform(-2, 3);
        d.add_point(random_point(rng, *g, max_denominator, allow_unbounded), c);
        sum += c;
    }
    d.add_point(random_point(rng, *g, max_denominator, allow_unbounded), degree - sum);
    return d;
}

Divisor random_effective_divisor(Rng& rng, const GraphPtr& g, std::int64_t degree, int max_denominator,
                                 bool allow_unbounded) {
    Divisor d(g);
    for (std::int64_t i = 0; i < degree; ++i) d.add_point(random_point(rng, *g, max_denominator, allow_unbounded), 1);
    return d;
}

RationalFunction random_function(Rng& rng, const GraphPtr& g, int max_slope) {
    const Graph& graph = g->graph();
    const MetricGraph& mg = *g;
    VertexIndex root = 0;
    while (mg.is_end(root)) ++root;
    std::vector<std::optional<Rational>> value(graph.vertex_count());
    value[root] = Rational(static_cast<long>(rng.uniform(-3, 3)));
    std::vector<std::optional<RationalFunction::EdgePiece>> pieces(graph.edge_count());

    std::deque<VertexIndex> queue{root};
    while (!queue.empty()) {
        VertexIndex u = queue.front();
        queue.pop_front();
        for (const auto& inc : graph.incidences(u)) {
            const auto& edge = graph.edge(inc.edge);
            if (mg.is_infinite(inc.edge) || pieces[inc.edge]) continue;
            VertexIndex w = inc.at_from ? edge.to : edge.from;
            if (value[w]) continue;
            auto bps = random_segments(rng, mg.length(inc.edge).value(), max_slope);
            Rational delta = bps.back().value;
            Rational start = inc.at_from ? *value[u] : *value[u] - delta;
            for (auto& bp : bps) bp.value += start;
            value[w] = inc.at_from ? bps.back().value : bps.front().value;
            pieces[inc.edge] = RationalFunction::EdgePiece{std::move(bps), 0};
            queue.push_back(w);
        }
    }
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        if (pieces[e]) continue;
        const auto& edge = graph.edge(e);
        const Rational& a = *value[edge.from];
        if (mg.is_infinite(e)) {
            RationalFunction::EdgePiece piece;
            piece.breakpoints.push_back({Rational(0), a});
            std::int64_t k = rng.uniform(0, 2);
            Rational offset = 0;
            for (std::int64_t i = 0; i < k; ++i) {
                offset += ratio(rng.uniform(1, 4), 2);
                Rational slope(static_cast<long>(rng.uniform(-max_slope, max_slope)));
                piece.breakpoints.push_back({offset, piece.breakpoints.back().value + slope * (offset - piece.breakpoints.back().offset)});
            }
            piece.end_slope = rng.uniform(-max_slope, max_slope);
            value[edge.to] = a;
            pieces[e] = std::move(piece);
            continue;
        }
        const Rational& b = *value[edge.to];
        const Rational& len = mg.length(e).value();
        Rational avg = (b - a) / len;
        Integer s1 = ceil_of(avg) + rng.uniform(0, 1);
        Integer s2 = floor_of(avg) - rng.uniform(0, 1);
        RationalFunction::EdgePiece piece;
        piece.breakpoints.push_back({Rational(0), a});
        if (s1 != s2) {
            Rational x = (b - a - Rational(s2) * len) / Rational(s1 - s2);
            if (x > 0 && x < len) piece.breakpoints.push_back({x, a + Rational(s1) * x});
        }
        piece.breakpoints.push_back({len, b});
        pieces[e] = std::move(piece);
    }
    std::vector<RationalFunction::EdgePiece> all;
    for (auto& p : pieces) all.push_back(std::move(*p));
    return RationalFunction(g, std::move(all), *value[root]);
}

}  // namespace tropical
