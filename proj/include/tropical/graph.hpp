#pragma once

#include "tropical/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tropical {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct EdgeSpec {
    std::string id;
    std::string from;
    std::string to;
};

/// One end of an edge as seen from a vertex. Loops contribute two incidences.
struct Incidence {
    EdgeIndex edge;
    bool at_from;
};

/// Finite connected multigraph; loops and parallel edges allowed.
class Graph {
public:
    struct Edge {
        std::string id;
        VertexIndex from;
        VertexIndex to;
        bool is_loop() const { return from == to; }
    };

    Graph(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges);

    std::size_t vertex_count() const { return vertex_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const Incidence> incidences(VertexIndex v) const { return incidences_.at(v); }

    std::optional<VertexIndex> find_vertex(std::string_view id) const;
    std::optional<EdgeIndex> find_edge(std::string_view id) const;
    VertexIndex vertex(std::string_view id) const;
    EdgeIndex edge_index(std::string_view id) const;

    int valence(VertexIndex v) const { return static_cast<int>(incidences_.at(v).size()); }
    int max_valence() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Incidence>> incidences_;
    std::map<std::string, VertexIndex, std::less<>> vertex_lookup_;
    std::map<std::string, EdgeIndex, std::less<>> edge_lookup_;
};

/// Edge length: a positive rational or the infinity marker.
class Length {
public:
    Length(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    static Length infinity() { return Length(); }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const;

    friend bool operator==(const Length& a, const Length& b);

private:
    Length() : infinite_(true) {}

    bool infinite_ = false;
    Rational value_;
};

/// A graph with edge lengths; a tropical curve when some lengths are infinite.
///
/// Infinite edges are stored oriented from the core attachment vertex towards
/// the unbounded end, so offsets on them measure the distance from the core.
class MetricGraph {
public:
    MetricGraph(const Graph& graph, std::vector<Length> lengths);

    const Graph& graph() const { return graph_; }
    const Length& length(EdgeIndex e) const { return lengths_.at(e); }
    bool is_infinite(EdgeIndex e) const { return lengths_.at(e).is_infinite(); }
    bool has_infinite_edges() const;
    /// True for the valence-one vertex at the far end of an infinite edge.
    bool is_end(VertexIndex v) const { return end_edge_.at(v).has_value(); }
    std::optional<EdgeIndex> end_edge(VertexIndex v) const { return end_edge_.at(v); }
    /// All finite lengths are integers.
    bool is_integral() const;

    friend bool operator==(const MetricGraph& a, const MetricGraph& b);

private:
    Graph graph_;
    std::vector<Length> lengths_;
    std::vector<std::optional<EdgeIndex>> end_edge_;
};

using GraphPtr = std::shared_ptr<const MetricGraph>;

struct MetricEdgeSpec {
    std::string id;
    std::string from;
    std::string to;
    std::string length;  // "p", "p/q" or "inf"
};

GraphPtr make_graph(std::vector<std::string> vertices, const std::vector<MetricEdgeSpec>& edges);

/// Point of the geometric representation, in canonical form: offsets 0 and
/// length(e) are always stored as the corresponding vertex, so structural
/// equality is point equality.
class GraphPoint {
public:
    static GraphPoint at_vertex(VertexIndex v);
    /// Canonicalises the endpoints; throws unless 0 <= offset <= length(e).
    static GraphPoint on_edge(const MetricGraph& g, EdgeIndex e, const Rational& offset);
    /// The unbounded end of an infinite edge (stored as its end vertex).
    static GraphPoint end_of(const MetricGraph& g, EdgeIndex e);

    bool is_vertex() const { return on_vertex_; }
    VertexIndex vertex() const;
    EdgeIndex edge() const;
    const Rational& offset() const;

    friend bool operator==(const GraphPoint& a, const GraphPoint& b);
    friend std::strong_ordering operator<=>(const GraphPoint& a, const GraphPoint& b);

private:
    GraphPoint(bool on_vertex, std::size_t index, Rational offset)
        : on_vertex_(on_vertex), index_(index), offset_(std::move(offset)) {}

    bool on_vertex_;
    std::size_t index_;
    Rational offset_;
};

/// Vertex id, or "edge@offset" for edge-interior points.
std::string point_label(const MetricGraph& g, const GraphPoint& p);
/// Inverse of point_label.
GraphPoint parse_point_label(const MetricGraph& g, std::string_view label);

/// Integer distance to the endpoints of its edge (vertices always qualify).
bool is_integral_point(const MetricGraph& g, const GraphPoint& p);
/// The point lies on an infinite edge or is an unbounded end.
bool on_unbounded_edge(const MetricGraph& g, const GraphPoint& p);

/// First Betti number. Infinite edges and their ends never close a cycle.
int genus(const MetricGraph& g);
int valence(const MetricGraph& g, VertexIndex v);

/// Shortest-path distance; +infinity iff exactly one argument is an unbounded
/// end (or they are distinct ends).
Extended distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

struct Rescaled {
    GraphPtr graph;
    Rational factor;

    GraphPoint transport(const GraphPoint& p) const;
    GraphPoint transport_back(const GraphPoint& p) const;
};

/// Multiplies every finite length by factor > 0; infinite edges unchanged.
Rescaled rescale(const GraphPtr& g, const Rational& factor);

/// Subdivision of an integral graph into unit edges. Vertices 0..V-1 are the
/// original vertices; interior integer points of edge e follow in offset
/// order.
struct UnitSubdivision {
    GraphPtr host;
    Graph graph;
    std::vector<GraphPoint> points;      // unit vertex -> integer point of host
    std::vector<VertexIndex> edge_base;  // first unit vertex of each host edge's interior

    VertexIndex vertex_of(const GraphPoint& p) const;
};

/// Requires finite positive integer lengths and no loop of length 1.
UnitSubdivision unit_subdivide(const GraphPtr& g);

/// The finite core of a tropical curve, obtained by deleting every infinite
/// edge together with its unbounded end.
struct CoreRetraction {
    GraphPtr curve;
    GraphPtr core;
    std::vector<std::optional<VertexIndex>> vertex_to_core;
    std::vector<std::optional<EdgeIndex>> edge_to_core;
    std::vector<VertexIndex> vertex_to_curve;
    std::vector<EdgeIndex> edge_to_curve;
    /// Infinite edge of the curve -> core vertex where it was attached.
    std::map<EdgeIndex, VertexIndex> attachments;

    GraphPoint to_core(const GraphPoint& curve_point) const;
    GraphPoint to_curve(const GraphPoint& core_point) const;
};

CoreRetraction retract_core(const GraphPtr& g);

}  // namespace tropical
