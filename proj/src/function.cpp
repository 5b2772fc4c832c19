#include "tropical/function.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <set>

namespace tropical {

namespace {

using Piece = RationalFunction::EdgePiece;

Rational segment_slope(const Breakpoint& a, const Breakpoint& b) { return (b.value - a.value) / (b.offset - a.offset); }

std::int64_t integer_slope(const Breakpoint& a, const Breakpoint& b, const std::string& edge_id) {
    Rational s = segment_slope(a, b);
    if (!is_integer(s)) {
        throw InvalidArgument("non-integer slope " + to_string(s) + " on edge \"" + edge_id + "\"");
    }
    return to_int64(s);
}

// Drops interior breakpoints whose two sides have the same slope, and a
// trailing breakpoint on an infinite edge that continues with end_slope.
void canonicalise(Piece& piece, bool infinite) {
    auto& bps = piece.breakpoints;
    std::vector<Breakpoint> kept;
    kept.reserve(bps.size());
    for (std::size_t i = 0; i < bps.size(); ++i) {
        if (!kept.empty() && i + 1 < bps.size() &&
            segment_slope(kept.back(), bps[i]) == segment_slope(bps[i], bps[i + 1])) {
            continue;
        }
        kept.push_back(bps[i]);
    }
    if (infinite) {
        while (kept.size() >= 2 && segment_slope(kept[kept.size() - 2], kept.back()) == piece.end_slope) {
            kept.pop_back();
        }
    }
    bps = std::move(kept);
}

Rational value_on_piece(const Piece& piece, const Rational& t) {
    const auto& bps = piece.breakpoints;
    auto it = std::upper_bound(bps.begin(), bps.end(), t,
                               [](const Rational& x, const Breakpoint& b) { return x < b.offset; });
    if (it == bps.end()) {
        const auto& last = bps.back();
        return last.value + piece.end_slope * (t - last.offset);
    }
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    return lo.value + segment_slope(lo, hi) * (t - lo.offset);
}

std::int64_t start_slope(const Piece& piece) {
    if (piece.breakpoints.size() >= 2) return to_int64(segment_slope(piece.breakpoints[0], piece.breakpoints[1]));
    return piece.end_slope;
}

std::int64_t final_slope(const Piece& piece) {
    const auto& bps = piece.breakpoints;
    return to_int64(segment_slope(bps[bps.size() - 2], bps.back()));
}

std::int64_t order_on_edge(const Piece& piece, const Rational& t) {
    const auto& bps = piece.breakpoints;
    for (std::size_t k = 1; k < bps.size(); ++k) {
        if (bps[k].offset == t) {
            std::int64_t left = to_int64(segment_slope(bps[k - 1], bps[k]));
            std::int64_t right = k + 1 < bps.size() ? to_int64(segment_slope(bps[k], bps[k + 1])) : piece.end_slope;
            return right - left;
        }
        if (bps[k].offset > t) break;
    }
    return 0;
}

std::int64_t order_at_vertex(const RationalFunction& f, VertexIndex v) {
    const MetricGraph& g = f.graph();
    if (g.is_end(v)) return -f.piece(*g.end_edge(v)).end_slope;
    std::int64_t sum = 0;
    for (const auto& inc : g.graph().incidences(v)) {
        const Piece& piece = f.piece(inc.edge);
        sum += inc.at_from ? start_slope(piece) : -final_slope(piece);
    }
    return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(GraphPtr host, std::vector<EdgePiece> pieces, Rational isolated_value)
    : host_(std::move(host)), pieces_(std::move(pieces)), isolated_value_(std::move(isolated_value)) {
    if (!host_) throw InvalidArgument("function needs a host graph");
    const Graph& graph = host_->graph();
    if (pieces_.size() != graph.edge_count()) throw InvalidArgument("function needs one piece per edge");

    std::vector<std::optional<Rational>> at_vertex(graph.vertex_count());
    auto pin = [&](VertexIndex v, const Rational& value, const std::string& edge_id) {
        if (!at_vertex[v]) {
            at_vertex[v] = value;
        } else if (*at_vertex[v] != value) {
            throw InvalidArgument("function is discontinuous at vertex \"" + graph.vertex_id(v) + "\" (edge \"" +
                                  edge_id + "\")");
        }
    };

    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        Piece& piece = pieces_[e];
        auto& bps = piece.breakpoints;
        if (bps.empty()) throw InvalidArgument("edge \"" + edge.id + "\" has no breakpoints");
        if (bps.front().offset != 0) throw InvalidArgument("edge \"" + edge.id + "\" must start at offset 0");
        for (std::size_t k = 1; k < bps.size(); ++k) {
            if (bps[k].offset <= bps[k - 1].offset) {
                throw InvalidArgument("breakpoints on edge \"" + edge.id + "\" must have increasing offsets");
            }
            integer_slope(bps[k - 1], bps[k], edge.id);
        }
        if (host_->is_infinite(e)) {
            canonicalise(piece, true);
        } else {
            if (bps.size() < 2 || bps.back().offset != host_->length(e).value()) {
                throw InvalidArgument("edge \"" + edge.id + "\" must end at its length");
            }
            if (piece.end_slope != 0) throw InvalidArgument("finite edge \"" + edge.id + "\" has an end slope");
            canonicalise(piece, false);
            pin(edge.to, bps.back().value, edge.id);
        }
        pin(edge.from, bps.front().value, edge.id);
    }
}

RationalFunction RationalFunction::constant(GraphPtr host, const Rational& value) {
    std::vector<EdgePiece> pieces;
    for (EdgeIndex e = 0; e < host->graph().edge_count(); ++e) {
        if (host->is_infinite(e)) {
            pieces.push_back({{{Rational(0), value}}, 0});
        } else {
            pieces.push_back({{{Rational(0), value}, {host->length(e).value(), value}}, 0});
        }
    }
    return RationalFunction(std::move(host), std::move(pieces), value);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.host_ != b.host_ && !(*a.host_ == *b.host_)) return false;
    if (a.pieces_.empty()) return a.isolated_value_ == b.isolated_value_;
    return a.pieces_ == b.pieces_;
}

// ---------------------------------------------------------------------------
// Evaluation and divisors

Extended evaluate(const RationalFunction& f, const GraphPoint& p) {
    const MetricGraph& g = f.graph();
    if (!p.is_vertex()) return value_on_piece(f.piece(p.edge()), p.offset());
    VertexIndex v = p.vertex();
    if (auto e = g.end_edge(v)) {
        const Piece& piece = f.piece(*e);
        if (piece.end_slope > 0) return Extended::plus_infinity();
        if (piece.end_slope < 0) return Extended::minus_infinity();
        return piece.breakpoints.back().value;
    }
    for (const auto& inc : g.graph().incidences(v)) {
        const Piece& piece = f.piece(inc.edge);
        return inc.at_from ? piece.breakpoints.front().value : piece.breakpoints.back().value;
    }
    return f.isolated_value();
}

std::int64_t order(const RationalFunction& f, const GraphPoint& p) {
    if (p.is_vertex()) return order_at_vertex(f, p.vertex());
    return order_on_edge(f.piece(p.edge()), p.offset());
}

Divisor principal_divisor(const RationalFunction& f) {
    const MetricGraph& g = f.graph();
    Divisor d(f.host());
    for (VertexIndex v = 0; v < g.graph().vertex_count(); ++v) {
        d.add_point(GraphPoint::at_vertex(v), order_at_vertex(f, v));
    }
    for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) {
        const auto& bps = f.piece(e).breakpoints;
        std::size_t stop = g.is_infinite(e) ? bps.size() : bps.size() - 1;
        for (std::size_t k = 1; k < stop; ++k) {
            d.add_point(GraphPoint::on_edge(g, e, bps[k].offset), order_on_edge(f.piece(e), bps[k].offset));
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Arithmetic

RationalFunction add(const RationalFunction& f, const RationalFunction& g) {
    require_same_host(f.host(), g.host());
    const MetricGraph& graph = f.graph();
    std::vector<Piece> pieces;
    for (EdgeIndex e = 0; e < graph.graph().edge_count(); ++e) {
        const Piece& a = f.piece(e);
        const Piece& b = g.piece(e);
        if ((a.end_slope > 0 && b.end_slope < 0) || (a.end_slope < 0 && b.end_slope > 0)) {
            throw InvalidArgument("sum is undefined at the unbounded end of edge \"" + graph.graph().edge(e).id +
                                  "\" (infinity minus infinity)");
        }
        std::set<Rational> offsets;
        for (const auto& bp : a.breakpoints) offsets.insert(bp.offset);
        for (const auto& bp : b.breakpoints) offsets.insert(bp.offset);
        Piece sum;
        sum.end_slope = a.end_slope + b.end_slope;
        for (const auto& t : offsets) sum.breakpoints.push_back({t, value_on_piece(a, t) + value_on_piece(b, t)});
        pieces.push_back(std::move(sum));
    }
    return RationalFunction(f.host(), std::move(pieces), f.isolated_value() + g.isolated_value());
}

RationalFunction add_constant(const RationalFunction& f, const Rational& c) {
    std::vector<Piece> pieces = f.pieces();
    for (auto& piece : pieces) {
        for (auto& bp : piece.breakpoints) bp.value += c;
    }
    return RationalFunction(f.host(), std::move(pieces), f.isolated_value() + c);
}

RationalFunction scale(const RationalFunction& f, std::int64_t k) {
    if (k == 0) return RationalFunction::constant(f.host(), 0);
    std::vector<Piece> pieces = f.pieces();
    Rational factor(static_cast<long>(k));
    for (auto& piece : pieces) {
        for (auto& bp : piece.breakpoints) bp.value *= factor;
        piece.end_slope *= k;
    }
    return RationalFunction(f.host(), std::move(pieces), f.isolated_value() * factor);
}

std::vector<std::int64_t> all_slopes(const RationalFunction& f) {
    std::vector<std::int64_t> out;
    for (EdgeIndex e = 0; e < f.pieces().size(); ++e) {
        const auto& bps = f.piece(e).breakpoints;
        for (std::size_t k = 1; k < bps.size(); ++k) out.push_back(to_int64(segment_slope(bps[k - 1], bps[k])));
        if (f.graph().is_infinite(e)) out.push_back(f.piece(e).end_slope);
    }
    return out;
}

std::int64_t pole_count(const RationalFunction& f) {
    std::int64_t poles = 0;
    Divisor d = principal_divisor(f);
    for (const auto& [p, c] : d.terms()) {
        if (c < 0) poles -= c;
    }
    return poles;
}

// ---------------------------------------------------------------------------
// Special functions

RationalFunction end_ramp(const GraphPtr& g, const GraphPoint& p) {
    if (!on_unbounded_edge(*g, p)) return RationalFunction::constant(g, 0);
    RationalFunction zero = RationalFunction::constant(g, 0);
    std::vector<Piece> pieces = zero.pieces();
    if (p.is_vertex()) {
        pieces[*g->end_edge(p.vertex())] = Piece{{{Rational(0), Rational(0)}}, 1};
    } else {
        pieces[p.edge()] = Piece{{{Rational(0), Rational(0)}, {p.offset(), p.offset()}}, 0};
    }
    return RationalFunction(g, std::move(pieces));
}

RetractedDivisor retract_divisor(const Divisor& d) {
    RationalFunction f = RationalFunction::constant(d.host(), 0);
    for (const auto& [p, c] : d.terms()) {
        if (on_unbounded_edge(d.graph(), p)) f = add(f, scale(end_ramp(d.host(), p), c));
    }
    Divisor moved = d + principal_divisor(f);
    return RetractedDivisor{std::move(moved), std::move(f)};
}

namespace {

// The graph refined at a set of extra edge points. Nodes 0..V-1 are the
// vertices; each extra point gets its own node.
struct Refinement {
    struct Stop {
        Rational offset;
        std::size_t node;
    };
    std::size_t node_count = 0;
    std::vector<std::vector<Stop>> stops;  // per edge, from offset 0 to length

    std::size_t node_of(const MetricGraph& g, const GraphPoint& p) const {
        if (p.is_vertex()) return p.vertex();
        for (const auto& s : stops[p.edge()]) {
            if (s.offset == p.offset()) return s.node;
        }
        (void)g;
        throw InvalidArgument("point is not a refinement node");
    }
};

Refinement refine(const MetricGraph& g, const std::vector<GraphPoint>& points) {
    const Graph& graph = g.graph();
    Refinement r;
    r.node_count = graph.vertex_count();
    std::vector<std::set<Rational>> extra(graph.edge_count());
    for (const auto& p : points) {
        if (!p.is_vertex()) extra[p.edge()].insert(p.offset());
    }
    r.stops.resize(graph.edge_count());
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        r.stops[e].push_back({Rational(0), edge.from});
        for (const auto& t : extra[e]) r.stops[e].push_back({t, r.node_count++});
        r.stops[e].push_back({g.length(e).value(), edge.to});
    }
    return r;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

Rational distance_to_integers(const GraphPoint& p) {
    if (p.is_vertex()) return 0;
    Rational down = p.offset() - Rational(floor_of(p.offset()));
    Rational up = Rational(ceil_of(p.offset())) - p.offset();
    return std::min(down, up);
}

}  // namespace

RationalFunction snap_ramp(const GraphPtr& g, const std::vector<GraphPoint>& zeros, const GraphPoint& target) {
    const MetricGraph& mg = *g;
    if (mg.has_infinite_edges() || !mg.is_integral()) throw InvalidArgument("snap_ramp needs a finite integral graph");
    if (zeros.empty()) throw InvalidArgument("snap_ramp needs at least one zero");
    if (!is_integral_point(mg, target)) throw InvalidArgument("snap_ramp target must be an integer point");
    Rational d;
    bool first = true;
    for (const auto& z : zeros) {
        if (is_integral_point(mg, z)) throw InvalidArgument("snap_ramp zeros must not be integer points");
        Rational dz = distance_to_integers(z);
        if (first || dz < d) d = dz;
        first = false;
    }

    std::vector<GraphPoint> nodes_wanted = zeros;
    nodes_wanted.push_back(target);
    Refinement r = refine(mg, nodes_wanted);
    const Graph& graph = mg.graph();

    std::vector<bool> is_zero(r.node_count, false);
    for (const auto& z : zeros) is_zero[r.node_of(mg, z)] = true;

    // Multi-source Dijkstra from the zeros over the refined graph.
    std::vector<std::vector<std::pair<std::size_t, Rational>>> adj(r.node_count);
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& stops = r.stops[e];
        for (std::size_t k = 1; k < stops.size(); ++k) {
            Rational len = stops[k].offset - stops[k - 1].offset;
            adj[stops[k - 1].node].emplace_back(stops[k].node, len);
            adj[stops[k].node].emplace_back(stops[k - 1].node, len);
        }
    }
    std::vector<std::optional<Rational>> dist(r.node_count);
    std::vector<bool> done(r.node_count, false);
    for (std::size_t n = 0; n < r.node_count; ++n) {
        if (is_zero[n]) dist[n] = Rational(0);
    }
    for (;;) {
        std::optional<std::size_t> best;
        for (std::size_t n = 0; n < r.node_count; ++n) {
            if (!done[n] && dist[n] && (!best || *dist[n] < *dist[*best])) best = n;
        }
        if (!best) break;
        done[*best] = true;
        for (const auto& [w, len] : adj[*best]) {
            Rational cand = *dist[*best] + len;
            if (!dist[w] || cand < *dist[w]) dist[w] = cand;
        }
    }

    std::size_t target_node = r.node_of(mg, target);
    if (*dist[target_node] != d) {
        throw InvalidArgument("snap_ramp target is not at the minimal distance from the zeros");
    }

    // Components of the graph with the zeros removed.
    UnionFind uf(r.node_count);
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& stops = r.stops[e];
        for (std::size_t k = 1; k < stops.size(); ++k) {
            std::size_t a = stops[k - 1].node;
            std::size_t b = stops[k].node;
            if (!is_zero[a] && !is_zero[b]) uf.unite(a, b);
        }
    }
    std::size_t component = uf.find(target_node);
    auto in_component = [&](std::size_t n) { return !is_zero[n] && uf.find(n) == component; };

    std::vector<Piece> pieces;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& stops = r.stops[e];
        std::set<Rational> offsets;
        std::vector<Breakpoint> bps;
        for (std::size_t k = 1; k < stops.size(); ++k) {
            const auto& a = stops[k - 1];
            const auto& b = stops[k];
            Rational len = b.offset - a.offset;
            bool inside = in_component(a.node) || in_component(b.node);
            if (!inside) {
                offsets.insert(a.offset);
                offsets.insert(b.offset);
                continue;
            }
            const Rational& da = *dist[a.node];
            const Rational& db = *dist[b.node];
            std::vector<Rational> xs{Rational(0), len, d - da, len - (d - db), (db + len - da) / 2};
            for (const auto& x : xs) {
                if (x >= 0 && x <= len) offsets.insert(a.offset + x);
            }
        }
        // Evaluate x -> -min(d, dist(x, zeros)) on each segment.
        for (const auto& t : offsets) {
            std::size_t k = 1;
            while (k + 1 < stops.size() && stops[k].offset < t) ++k;
            const auto& a = stops[k - 1];
            const auto& b = stops[k];
            bool inside = in_component(a.node) || in_component(b.node);
            Rational value = 0;
            if (inside) {
                Rational x = t - a.offset;
                Rational len = b.offset - a.offset;
                Rational m = std::min({Rational(d), Rational(*dist[a.node] + x), Rational(*dist[b.node] + len - x)});
                value = -m;
            }
            bps.push_back({t, value});
        }
        pieces.push_back({std::move(bps), 0});
    }
    return RationalFunction(g, std::move(pieces));
}

RationalFunction snap_to_integer_points(const Divisor& d, const RationalFunction& f) {
    const MetricGraph& g = d.graph();
    require_same_host(d.host(), f.host());
    if (g.has_infinite_edges() || !g.is_integral()) throw InvalidArgument("snapping needs a finite integral graph");
    if (!is_integral_divisor(d)) throw InvalidArgument("snapping needs an integral divisor");
    if (!(principal_divisor(f) + d).is_effective()) throw InvalidArgument("(f) + D must be effective");

    RationalFunction current = f;
    Divisor work = d;
    while (work.degree() > 0) {
        Divisor e = principal_divisor(current) + work;
        std::optional<GraphPoint> integral;
        for (const auto& [p, c] : e.terms()) {
            if (is_integral_point(g, p)) {
                integral = p;
                break;
            }
        }
        if (integral) {
            work.add_point(*integral, -1);
            continue;
        }
        std::vector<GraphPoint> zeros;
        const GraphPoint* closest = nullptr;
        Rational best;
        for (const auto& [p, c] : e.terms()) {
            for (Divisor::Coefficient k = 0; k < c; ++k) zeros.push_back(p);
            Rational dp = distance_to_integers(p);
            if (!closest || dp < best) {
                closest = &p;
                best = dp;
            }
        }
        const Rational& t = closest->offset();
        Rational down = t - Rational(floor_of(t));
        Rational nearest = down <= best ? Rational(floor_of(t)) : Rational(ceil_of(t));
        GraphPoint target = GraphPoint::on_edge(g, closest->edge(), nearest);
        current = add(current, snap_ramp(d.host(), zeros, target));
        work.add_point(target, -1);
    }
    return current;
}

Integer slope_bound(const Graph& g, int poles) {
    if (poles < 1) throw InvalidArgument("slope bound needs at least one pole");
    Integer base = g.max_valence() + poles;
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(g.edge_count()));
    return out;
}

// ---------------------------------------------------------------------------
// Moving functions between graphs

RationalFunction transport(const RationalFunction& f, const Rescaled& r) {
    std::vector<Piece> pieces = f.pieces();
    for (auto& piece : pieces) {
        for (auto& bp : piece.breakpoints) {
            bp.offset *= r.factor;
            bp.value *= r.factor;
        }
    }
    return RationalFunction(r.graph, std::move(pieces), f.isolated_value() * r.factor);
}

RationalFunction transport_back(const RationalFunction& f, const Rescaled& r, const GraphPtr& original) {
    std::vector<Piece> pieces = f.pieces();
    for (auto& piece : pieces) {
        for (auto& bp : piece.breakpoints) {
            bp.offset /= r.factor;
            bp.value /= r.factor;
        }
    }
    return RationalFunction(original, std::move(pieces), f.isolated_value() / r.factor);
}

RationalFunction to_curve(const RationalFunction& f, const CoreRetraction& r) {
    const Graph& curve = r.curve->graph();
    std::vector<Piece> pieces(curve.edge_count());
    for (EdgeIndex e = 0; e < curve.edge_count(); ++e) {
        if (auto core_edge = r.edge_to_core[e]) {
            pieces[e] = f.piece(*core_edge);
        } else {
            VertexIndex attach = r.attachments.at(e);
            Extended v = evaluate(f, GraphPoint::at_vertex(attach));
            pieces[e] = Piece{{{Rational(0), v.value()}}, 0};
        }
    }
    return RationalFunction(r.curve, std::move(pieces), f.isolated_value());
}

}  // namespace tropical
