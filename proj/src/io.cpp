#include "tropical/io.hpp"

#include <string>

namespace tropical {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError((path.empty() ? std::string("/") : path) + ": " + message);
}

const json& member(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::int64_t integer_at(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

Rational rational_at(const json& j, const std::string& path) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
        if (!j.is_string()) fail(path, "expected an exact rational string");
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        if (std::string(e.what()).rfind(path, 0) == 0) throw;
        fail(path, e.what());
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    }
}

const json& array_at(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

// Runs f, rewrapping library validation errors with the JSON path.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& e) {
        fail(path, e.what());
    } catch (const std::overflow_error& e) {
        fail(path, e.what());
    }
}

std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

GraphPtr graph_at(const json& j, const std::string& path) {
    const json& vs = array_at(member(j, path, "vertices"), path + "/vertices");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(string_at(vs[i], path + "/vertices/" + std::to_string(i)));
    const json& es = array_at(member(j, path, "edges"), path + "/edges");
    std::vector<MetricEdgeSpec> edges;
    for (std::size_t i = 0; i < es.size(); ++i) {
        std::string p = path + "/edges/" + std::to_string(i);
        MetricEdgeSpec spec;
        spec.id = string_at(member(es[i], p, "id"), p + "/id");
        spec.from = string_at(member(es[i], p, "from"), p + "/from");
        spec.to = string_at(member(es[i], p, "to"), p + "/to");
        const json& len = member(es[i], p, "length");
        if (len.is_string() && len.get<std::string>() == "inf") {
            spec.length = "inf";
        } else {
            spec.length = to_string(rational_at(len, p + "/length"));
        }
        edges.push_back(std::move(spec));
    }
    return at_path(path.empty() ? "/" : path, [&] { return make_graph(std::move(vertices), edges); });
}

GraphPoint point_at(const MetricGraph& g, const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected a point object");
    if (j.contains("vertex")) {
        std::string id = string_at(j["vertex"], path + "/vertex");
        return at_path(path + "/vertex", [&] { return GraphPoint::at_vertex(g.graph().vertex(id)); });
    }
    if (j.contains("end")) {
        std::string id = string_at(j["end"], path + "/end");
        return at_path(path + "/end", [&] { return GraphPoint::end_of(g, g.graph().edge_index(id)); });
    }
    if (j.contains("edge")) {
        std::string id = string_at(j["edge"], path + "/edge");
        Rational offset = rational_at(member(j, path, "offset"), path + "/offset");
        return at_path(path, [&] { return GraphPoint::on_edge(g, g.graph().edge_index(id), offset); });
    }
    fail(path, "point needs \"vertex\", \"edge\" or \"end\"");
}

Divisor divisor_at(const GraphPtr& g, const json& j, const std::string& path) {
    array_at(j, path);
    Divisor d(g);
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "/" + std::to_string(i);
        GraphPoint pt = point_at(*g, member(j[i], p, "point"), p + "/point");
        std::int64_t c = integer_at(member(j[i], p, "coeff"), p + "/coeff");
        d.add_point(pt, c);
    }
    return d;
}

RationalFunction function_at(const GraphPtr& g, const json& j, const std::string& path) {
    array_at(j, path);
    const Graph& graph = g->graph();
    std::vector<std::optional<RationalFunction::EdgePiece>> pieces(graph.edge_count());
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "/" + std::to_string(i);
        std::string id = string_at(member(j[i], p, "edge"), p + "/edge");
        auto e = graph.find_edge(id);
        if (!e) fail(p + "/edge", "unknown edge \"" + id + "\"");
        if (pieces[*e]) fail(p + "/edge", "edge \"" + id + "\" listed twice");
        RationalFunction::EdgePiece piece;
        const json& bps = array_at(member(j[i], p, "breakpoints"), p + "/breakpoints");
        for (std::size_t k = 0; k < bps.size(); ++k) {
            std::string bp = p + "/breakpoints/" + std::to_string(k);
            piece.breakpoints.push_back({rational_at(member(bps[k], bp, "offset"), bp + "/offset"),
                                         rational_at(member(bps[k], bp, "value"), bp + "/value")});
        }
        if (j[i].contains("end_slope")) piece.end_slope = integer_at(j[i]["end_slope"], p + "/end_slope");
        pieces[*e] = std::move(piece);
    }
    std::vector<RationalFunction::EdgePiece> all;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        if (!pieces[e]) fail(path, "no breakpoints for edge \"" + graph.edge(e).id + "\"");
        all.push_back(std::move(*pieces[e]));
    }
    return at_path(path, [&] { return RationalFunction(g, std::move(all)); });
}

}  // namespace

GraphPtr graph_from_json(const json& j) { return graph_at(j, ""); }

json graph_to_json(const MetricGraph& g) {
    const Graph& graph = g.graph();
    json out;
    out["vertices"] = json::array();
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) out["vertices"].push_back(graph.vertex_id(v));
    out["edges"] = json::array();
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        out["edges"].push_back({{"id", edge.id},
                                {"from", graph.vertex_id(edge.from)},
                                {"to", graph.vertex_id(edge.to)},
                                {"length", g.is_infinite(e) ? std::string("inf") : to_string(g.length(e).value())}});
    }
    return out;
}

GraphPoint point_from_json(const MetricGraph& g, const json& j) { return point_at(g, j, ""); }

json point_to_json(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex()) {
        if (auto e = g.end_edge(p.vertex())) return {{"end", g.graph().edge(*e).id}};
        return {{"vertex", g.graph().vertex_id(p.vertex())}};
    }
    return {{"edge", g.graph().edge(p.edge()).id}, {"offset", to_string(p.offset())}};
}

Divisor divisor_from_json(const GraphPtr& g, const json& j) { return divisor_at(g, j, ""); }

json divisor_to_json(const Divisor& d) {
    json out = json::array();
    for (const auto& [p, c] : d.terms()) out.push_back({{"point", point_to_json(d.graph(), p)}, {"coeff", c}});
    return out;
}

RationalFunction function_from_json(const GraphPtr& g, const json& j) { return function_at(g, j, ""); }

json function_to_json(const RationalFunction& f) {
    json out = json::array();
    const MetricGraph& g = f.graph();
    for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) {
        json piece;
        piece["edge"] = g.graph().edge(e).id;
        piece["breakpoints"] = json::array();
        for (const auto& bp : f.piece(e).breakpoints) {
            piece["breakpoints"].push_back({{"offset", to_string(bp.offset)}, {"value", to_string(bp.value)}});
        }
        if (g.is_infinite(e)) piece["end_slope"] = f.piece(e).end_slope;
        out.push_back(std::move(piece));
    }
    return out;
}

Document parse_document(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                         std::string(e.what()));
    }
    if (!j.is_object()) fail("", "document must be an object");
    Document doc;
    doc.graph = graph_at(j, "");
    if (j.contains("divisors")) {
        const json& ds = j["divisors"];
        if (!ds.is_object()) fail("/divisors", "expected an object");
        for (const auto& [name, value] : ds.items()) {
            doc.divisors.emplace(name, divisor_at(doc.graph, value, "/divisors/" + name));
        }
    }
    if (j.contains("functions")) {
        const json& fs = j["functions"];
        if (!fs.is_object()) fail("/functions", "expected an object");
        for (const auto& [name, value] : fs.items()) {
            doc.functions.emplace(name, function_at(doc.graph, value, "/functions/" + name));
        }
    }
    return doc;
}

json document_to_json(const Document& doc) {
    json out = graph_to_json(*doc.graph);
    if (!doc.divisors.empty()) {
        out["divisors"] = json::object();
        for (const auto& [name, d] : doc.divisors) out["divisors"][name] = divisor_to_json(d);
    }
    if (!doc.functions.empty()) {
        out["functions"] = json::object();
        for (const auto& [name, f] : doc.functions) out["functions"][name] = function_to_json(f);
    }
    return out;
}

std::string serialize_document(const Document& doc) { return document_to_json(doc).dump(2) + "\n"; }

json rank_report_to_json(const RankReport& r) {
    json out;
    out["rank"] = r.rank;
    out["scales_tested"] = r.scales_tested;
    out["stabilized"] = r.stabilized;
    out["witness"] = r.witness ? divisor_to_json(*r.witness) : json(nullptr);
    return out;
}

json cell_report_to_json(const MetricGraph& g, const CellReport& r) {
    json out;
    out["cells"] = json::array();
    for (const auto& c : r.cells) {
        json placement = json::array();
        for (const auto& loc : c.signature.placement) {
            placement.push_back(loc.is_vertex ? json{{"vertex", g.graph().vertex_id(loc.index)}}
                                              : json{{"edge", g.graph().edge(loc.index).id}});
        }
        json slopes = json::object();
        for (EdgeIndex e = 0; e < c.signature.slopes.size(); ++e) slopes[g.graph().edge(e).id] = c.signature.slopes[e];
        out["cells"].push_back({{"signature", {{"placement", placement}, {"slopes", slopes}}},
                                {"dimension", c.dimension},
                                {"feasible", c.feasible},
                                {"orbit", c.orbit}});
    }
    json dims = json::array();
    for (const auto& [dim, count] : r.dimension_counts) {
        for (std::size_t i = 0; i < count; ++i) dims.push_back(dim);
    }
    out["summary"] = {{"dims", dims}, {"truncated", r.truncated}, {"slope_bound", r.slope_bound.get_str()}};
    return out;
}

namespace {

template <typename T>
std::pair<T, T> range_at(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
    auto lo = integer_at(j[0], path + "/0");
    auto hi = integer_at(j[1], path + "/1");
    return {static_cast<T>(lo), static_cast<T>(hi)};
}

int small_at(const json& j, const std::string& path) {
    auto v = integer_at(j, path);
    if (v < 0 || v > 1000000) fail(path, "out of range");
    return static_cast<int>(v);
}

}  // namespace

CampaignConfig campaign_config_from_json(const json& j) {
    if (!j.is_object()) fail("", "expected an object");
    CampaignConfig c;
    for (const auto& [key, value] : j.items()) {
        const std::string path = "/" + key;
        if (key == "seed") {
            if (!value.is_number_unsigned()) fail(path, "expected a nonnegative integer");
            c.seed = value.get<std::uint64_t>();
        } else if (key == "instances") {
            c.instances = static_cast<std::size_t>(small_at(value, path));
        } else if (key == "genus") {
            c.genus = range_at<int>(value, path);
        } else if (key == "edges") {
            c.edges = range_at<int>(value, path);
        } else if (key == "degree") {
            c.degree = range_at<std::int64_t>(value, path);
        } else if (key == "max_denominator") {
            c.max_denominator = small_at(value, path);
        } else if (key == "scale_cap") {
            c.scale_cap = small_at(value, path);
        } else if (key == "max_ends") {
            c.max_ends = small_at(value, path);
        } else {
            fail(path, "unknown field");
        }
    }
    at_path("", [&] { c.validate(); });
    return c;
}

CampaignConfig parse_campaign_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                         std::string(e.what()));
    }
    return campaign_config_from_json(j);
}

json instance_record_to_json(const InstanceRecord& r) {
    return {{"index", r.index},
            {"graph_hash", r.graph_hash},
            {"divisor", r.divisor},
            {"rank_d", r.rank_d},
            {"rank_k_minus_d", r.rank_k_minus_d},
            {"degree", r.degree},
            {"genus", r.genus},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"scales", r.scales},
            {"stabilized", r.stabilized},
            {"verdict", to_string(r.verdict)}};
}

json campaign_summary_to_json(const CampaignReport& r) {
    return {{"instances", r.records.size()},
            {"passed", r.passed},
            {"failed", r.failed},
            {"inconclusive", r.inconclusive},
            {"seconds", r.seconds}};
}

}  // namespace tropical
