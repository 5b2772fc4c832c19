#include "tropical/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace tropical {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges)
    : vertex_ids_(std::move(vertex_ids)) {
    if (vertex_ids_.empty()) throw InvalidArgument("graph has no vertices");
    for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
        if (vertex_ids_[v].empty()) throw InvalidArgument("empty vertex id");
        if (!vertex_lookup_.emplace(vertex_ids_[v], v).second) {
            throw InvalidArgument("duplicate vertex id \"" + vertex_ids_[v] + "\"");
        }
    }
    incidences_.resize(vertex_ids_.size());
    for (const auto& spec : edges) {
        if (spec.id.empty()) throw InvalidArgument("empty edge id");
        auto from = find_vertex(spec.from);
        auto to = find_vertex(spec.to);
        if (!from || !to) {
            throw InvalidArgument("edge \"" + spec.id + "\" references an unknown vertex");
        }
        EdgeIndex e = edges_.size();
        if (!edge_lookup_.emplace(spec.id, e).second) {
            throw InvalidArgument("duplicate edge id \"" + spec.id + "\"");
        }
        edges_.push_back(Edge{spec.id, *from, *to});
        incidences_[*from].push_back({e, true});
        incidences_[*to].push_back({e, false});
    }

    // Connectivity.
    std::vector<bool> seen(vertex_ids_.size(), false);
    std::vector<VertexIndex> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        for (const auto& inc : incidences_[v]) {
            const auto& edge = edges_[inc.edge];
            VertexIndex w = inc.at_from ? edge.to : edge.from;
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw InvalidArgument("graph is not connected");
    }
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
    auto it = vertex_lookup_.find(id);
    if (it == vertex_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeIndex> Graph::find_edge(std::string_view id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
}

VertexIndex Graph::vertex(std::string_view id) const {
    auto v = find_vertex(id);
    if (!v) throw InvalidArgument("unknown vertex \"" + std::string(id) + "\"");
    return *v;
}

EdgeIndex Graph::edge_index(std::string_view id) const {
    auto e = find_edge(id);
    if (!e) throw InvalidArgument("unknown edge \"" + std::string(id) + "\"");
    return *e;
}

int Graph::max_valence() const {
    int best = 0;
    for (VertexIndex v = 0; v < vertex_count(); ++v) best = std::max(best, valence(v));
    return best;
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.vertex_ids_ != b.vertex_ids_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
        const auto& x = a.edges_[i];
        const auto& y = b.edges_[i];
        if (x.id != y.id || x.from != y.from || x.to != y.to) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Length / MetricGraph

const Rational& Length::value() const {
    if (infinite_) throw InvalidArgument("infinite length has no rational value");
    return value_;
}

bool operator==(const Length& a, const Length& b) {
    if (a.infinite_ != b.infinite_) return false;
    return a.infinite_ || a.value_ == b.value_;
}

namespace {

Graph orient_infinite_edges(const Graph& g, const std::vector<Length>& lengths) {
    std::vector<std::string> ids;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) ids.push_back(g.vertex_id(v));
    std::vector<EdgeSpec> specs;
    bool changed = false;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        EdgeSpec spec{edge.id, ids[edge.from], ids[edge.to]};
        if (lengths[e].is_infinite()) {
            if (edge.is_loop()) throw InvalidArgument("loop \"" + edge.id + "\" cannot have infinite length");
            bool to_is_end = g.valence(edge.to) == 1;
            bool from_is_end = g.valence(edge.from) == 1;
            if (!to_is_end && !from_is_end) {
                throw InvalidArgument("infinite edge \"" + edge.id + "\" has no valence-one endpoint");
            }
            if (!to_is_end) {
                std::swap(spec.from, spec.to);
                changed = true;
            }
        }
        specs.push_back(std::move(spec));
    }
    if (!changed) return g;
    return Graph(std::move(ids), specs);
}

}  // namespace

MetricGraph::MetricGraph(const Graph& graph, std::vector<Length> lengths)
    : graph_(graph), lengths_(std::move(lengths)) {
    if (lengths_.size() != graph_.edge_count()) throw InvalidArgument("one length per edge required");
    for (EdgeIndex e = 0; e < lengths_.size(); ++e) {
        if (!lengths_[e].is_infinite() && lengths_[e].value() <= 0) {
            throw InvalidArgument("edge \"" + graph_.edge(e).id + "\" must have positive length");
        }
    }
    graph_ = orient_infinite_edges(graph_, lengths_);
    end_edge_.assign(graph_.vertex_count(), std::nullopt);
    for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
        if (lengths_[e].is_infinite()) end_edge_[graph_.edge(e).to] = e;
    }
}

bool MetricGraph::has_infinite_edges() const {
    return std::any_of(lengths_.begin(), lengths_.end(), [](const Length& l) { return l.is_infinite(); });
}

bool MetricGraph::is_integral() const {
    return std::all_of(lengths_.begin(), lengths_.end(),
                       [](const Length& l) { return l.is_infinite() || is_integer(l.value()); });
}

bool operator==(const MetricGraph& a, const MetricGraph& b) {
    return a.graph_ == b.graph_ && a.lengths_ == b.lengths_;
}

GraphPtr make_graph(std::vector<std::string> vertices, const std::vector<MetricEdgeSpec>& edges) {
    std::vector<EdgeSpec> specs;
    std::vector<Length> lengths;
    for (const auto& e : edges) {
        specs.push_back({e.id, e.from, e.to});
        if (e.length == "inf") {
            lengths.push_back(Length::infinity());
        } else {
            lengths.emplace_back(parse_rational(e.length));
        }
    }
    return std::make_shared<const MetricGraph>(Graph(std::move(vertices), specs), std::move(lengths));
}

// ---------------------------------------------------------------------------
// GraphPoint

GraphPoint GraphPoint::at_vertex(VertexIndex v) { return GraphPoint(true, v, Rational(0)); }

GraphPoint GraphPoint::on_edge(const MetricGraph& g, EdgeIndex e, const Rational& offset) {
    const auto& edge = g.graph().edge(e);
    if (offset < 0) throw InvalidArgument("negative offset on edge \"" + edge.id + "\"");
    if (offset == 0) return at_vertex(edge.from);
    if (!g.is_infinite(e)) {
        const Rational& len = g.length(e).value();
        if (offset > len) throw InvalidArgument("offset exceeds length of edge \"" + edge.id + "\"");
        if (offset == len) return at_vertex(edge.to);
    }
    return GraphPoint(false, e, offset);
}

GraphPoint GraphPoint::end_of(const MetricGraph& g, EdgeIndex e) {
    if (!g.is_infinite(e)) throw InvalidArgument("edge \"" + g.graph().edge(e).id + "\" has no unbounded end");
    return at_vertex(g.graph().edge(e).to);
}

VertexIndex GraphPoint::vertex() const {
    if (!on_vertex_) throw InvalidArgument("point is not a vertex");
    return index_;
}

EdgeIndex GraphPoint::edge() const {
    if (on_vertex_) throw InvalidArgument("point is a vertex");
    return index_;
}

const Rational& GraphPoint::offset() const {
    if (on_vertex_) throw InvalidArgument("point is a vertex");
    return offset_;
}

bool operator==(const GraphPoint& a, const GraphPoint& b) {
    return a.on_vertex_ == b.on_vertex_ && a.index_ == b.index_ && (a.on_vertex_ || a.offset_ == b.offset_);
}

std::strong_ordering operator<=>(const GraphPoint& a, const GraphPoint& b) {
    // Vertices sort before edge points.
    if (a.on_vertex_ != b.on_vertex_) return a.on_vertex_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    if (a.on_vertex_) return std::strong_ordering::equal;
    int c = cmp(a.offset_, b.offset_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string point_label(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex()) return g.graph().vertex_id(p.vertex());
    return g.graph().edge(p.edge()).id + "@" + to_string(p.offset());
}

GraphPoint parse_point_label(const MetricGraph& g, std::string_view label) {
    auto at = label.rfind('@');
    if (at == std::string_view::npos) return GraphPoint::at_vertex(g.graph().vertex(label));
    EdgeIndex e = g.graph().edge_index(label.substr(0, at));
    return GraphPoint::on_edge(g, e, parse_rational(label.substr(at + 1)));
}

bool is_integral_point(const MetricGraph& g, const GraphPoint& p) {
    (void)g;
    return p.is_vertex() || is_integer(p.offset());
}

bool on_unbounded_edge(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex()) return g.is_end(p.vertex());
    return g.is_infinite(p.edge());
}

int genus(const MetricGraph& g) {
    return static_cast<int>(g.graph().edge_count()) - static_cast<int>(g.graph().vertex_count()) + 1;
}

int valence(const MetricGraph& g, VertexIndex v) {
    if (v >= g.graph().vertex_count()) throw InvalidArgument("unknown vertex index");
    return g.graph().valence(v);
}

// ---------------------------------------------------------------------------
// Distances

namespace {

// Dijkstra over the vertices, seeded with the given tentative distances.
// Infinite edges are never traversed; ends stay unreachable.
std::vector<std::optional<Rational>> vertex_distances(const MetricGraph& g,
                                                      std::vector<std::optional<Rational>> dist) {
    const Graph& graph = g.graph();
    std::vector<bool> done(graph.vertex_count(), false);
    for (;;) {
        std::optional<VertexIndex> best;
        for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
            if (done[v] || !dist[v]) continue;
            if (!best || *dist[v] < *dist[*best]) best = v;
        }
        if (!best) break;
        done[*best] = true;
        for (const auto& inc : graph.incidences(*best)) {
            if (g.is_infinite(inc.edge)) continue;
            const auto& edge = graph.edge(inc.edge);
            VertexIndex w = inc.at_from ? edge.to : edge.from;
            Rational cand = *dist[*best] + g.length(inc.edge).value();
            if (!dist[w] || cand < *dist[w]) dist[w] = cand;
        }
    }
    return dist;
}

}  // namespace

Extended distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
    if (p == q) return Rational(0);
    const Graph& graph = g.graph();
    bool p_end = p.is_vertex() && g.is_end(p.vertex());
    bool q_end = q.is_vertex() && g.is_end(q.vertex());
    if (p_end || q_end) return Extended::plus_infinity();

    std::vector<std::optional<Rational>> seed(graph.vertex_count());
    if (p.is_vertex()) {
        seed[p.vertex()] = Rational(0);
    } else {
        const auto& edge = graph.edge(p.edge());
        seed[edge.from] = p.offset();
        if (!g.is_infinite(p.edge())) {
            Rational back = g.length(p.edge()).value() - p.offset();
            if (!seed[edge.to] || back < *seed[edge.to]) seed[edge.to] = back;
        }
    }
    auto dist = vertex_distances(g, std::move(seed));

    std::optional<Rational> best;
    auto consider = [&best](const Rational& value) {
        if (!best || value < *best) best = value;
    };
    if (q.is_vertex()) {
        if (dist[q.vertex()]) consider(*dist[q.vertex()]);
    } else {
        const auto& edge = graph.edge(q.edge());
        if (dist[edge.from]) consider(*dist[edge.from] + q.offset());
        if (!g.is_infinite(q.edge()) && dist[edge.to]) {
            consider(*dist[edge.to] + g.length(q.edge()).value() - q.offset());
        }
        if (!p.is_vertex() && p.edge() == q.edge()) consider(abs(Rational(p.offset() - q.offset())));
    }
    if (!best) return Extended::plus_infinity();
    return *best;
}

// ---------------------------------------------------------------------------
// Rescaling

GraphPoint Rescaled::transport(const GraphPoint& p) const {
    if (p.is_vertex()) return p;
    return GraphPoint::on_edge(*graph, p.edge(), p.offset() * factor);
}

GraphPoint Rescaled::transport_back(const GraphPoint& p) const {
    if (p.is_vertex()) return p;
    return GraphPoint::on_edge(*graph, p.edge(), p.offset() / factor);
}

Rescaled rescale(const GraphPtr& g, const Rational& factor) {
    if (factor <= 0) throw InvalidArgument("rescaling factor must be positive");
    std::vector<Length> lengths;
    for (EdgeIndex e = 0; e < g->graph().edge_count(); ++e) {
        if (g->is_infinite(e)) {
            lengths.push_back(Length::infinity());
        } else {
            lengths.emplace_back(Rational(g->length(e).value() * factor));
        }
    }
    return Rescaled{std::make_shared<const MetricGraph>(g->graph(), std::move(lengths)), factor};
}

// ---------------------------------------------------------------------------
// Unit subdivision

VertexIndex UnitSubdivision::vertex_of(const GraphPoint& p) const {
    if (p.is_vertex()) return p.vertex();
    if (!is_integer(p.offset())) throw InvalidArgument("point is not an integer point");
    return edge_base.at(p.edge()) + static_cast<VertexIndex>(to_int64(p.offset()) - 1);
}

UnitSubdivision unit_subdivide(const GraphPtr& g) {
    const Graph& graph = g->graph();
    std::vector<std::string> ids;
    std::vector<GraphPoint> points;
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        ids.push_back(graph.vertex_id(v));
        points.push_back(GraphPoint::at_vertex(v));
    }
    std::vector<VertexIndex> base(graph.edge_count());
    std::vector<EdgeSpec> specs;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        if (g->is_infinite(e)) throw InvalidArgument("cannot subdivide infinite edge \"" + edge.id + "\"");
        const Rational& len = g->length(e).value();
        if (!is_integer(len)) throw InvalidArgument("edge \"" + edge.id + "\" has non-integer length");
        std::int64_t n = to_int64(len);
        if (edge.is_loop() && n < 2) {
            throw InvalidArgument("loop \"" + edge.id + "\" of length 1 must be rescaled before subdivision");
        }
        base[e] = ids.size();
        for (std::int64_t k = 1; k < n; ++k) {
            ids.push_back(edge.id + "@" + std::to_string(k));
            points.push_back(GraphPoint::on_edge(*g, e, Rational(k)));
        }
        for (std::int64_t k = 0; k < n; ++k) {
            std::string a = k == 0 ? graph.vertex_id(edge.from) : ids[base[e] + k - 1];
            std::string b = k == n - 1 ? graph.vertex_id(edge.to) : ids[base[e] + k];
            specs.push_back({n == 1 ? edge.id : edge.id + "#" + std::to_string(k), a, b});
        }
    }
    return UnitSubdivision{g, Graph(std::move(ids), specs), std::move(points), std::move(base)};
}

// ---------------------------------------------------------------------------
// Core retraction

GraphPoint CoreRetraction::to_core(const GraphPoint& p) const {
    if (p.is_vertex()) {
        auto v = vertex_to_core.at(p.vertex());
        if (!v) throw InvalidArgument("point is an unbounded end, not on the core");
        return GraphPoint::at_vertex(*v);
    }
    auto e = edge_to_core.at(p.edge());
    if (!e) throw InvalidArgument("point lies on an unbounded edge, not on the core");
    return GraphPoint::on_edge(*core, *e, p.offset());
}

GraphPoint CoreRetraction::to_curve(const GraphPoint& p) const {
    if (p.is_vertex()) return GraphPoint::at_vertex(vertex_to_curve.at(p.vertex()));
    return GraphPoint::on_edge(*curve, edge_to_curve.at(p.edge()), p.offset());
}

CoreRetraction retract_core(const GraphPtr& g) {
    const Graph& graph = g->graph();
    CoreRetraction r;
    r.curve = g;
    r.vertex_to_core.assign(graph.vertex_count(), std::nullopt);
    r.edge_to_core.assign(graph.edge_count(), std::nullopt);
    std::vector<std::string> ids;
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
        if (g->is_end(v)) continue;
        r.vertex_to_core[v] = ids.size();
        r.vertex_to_curve.push_back(v);
        ids.push_back(graph.vertex_id(v));
    }
    std::vector<EdgeSpec> specs;
    std::vector<Length> lengths;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        if (g->is_infinite(e)) {
            r.attachments[e] = *r.vertex_to_core[edge.from];
            continue;
        }
        r.edge_to_core[e] = specs.size();
        r.edge_to_curve.push_back(e);
        specs.push_back({edge.id, graph.vertex_id(edge.from), graph.vertex_id(edge.to)});
        lengths.push_back(g->length(e));
    }
    if (r.attachments.empty()) {
        r.core = g;
    } else {
        r.core = std::make_shared<const MetricGraph>(Graph(std::move(ids), specs), std::move(lengths));
    }
    return r;
}

}  // namespace tropical
