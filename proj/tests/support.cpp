#include "support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace fixtures {

GraphPtr dumbbell(const std::string& loop, const std::string& bridge) {
    return make_graph({"P", "Q"}, {{"a", "P", "P", loop}, {"e", "P", "Q", bridge}, {"b", "Q", "Q", loop}});
}

GraphPtr unit_loop() { return make_graph({"v"}, {{"l", "v", "v", "1"}}); }

GraphPtr segment(const std::string& length) { return make_graph({"A", "B"}, {{"s", "A", "B", length}}); }

GraphPtr cycle(int n, const std::string& length) {
    std::vector<std::string> ids;
    std::vector<MetricEdgeSpec> edges;
    for (int i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
    for (int i = 0; i < n; ++i) edges.push_back({"k" + std::to_string(i), ids[i], ids[(i + 1) % n], length});
    return make_graph(ids, edges);
}

GraphPtr loop_with_end() { return make_graph({"Q", "x0"}, {{"l", "Q", "Q", "1"}, {"r0", "Q", "x0", "inf"}}); }

GraphPoint vertex(const MetricGraph& g, const std::string& id) { return GraphPoint::at_vertex(g.graph().vertex(id)); }

GraphPoint point(const MetricGraph& g, const std::string& edge, const std::string& offset) {
    return GraphPoint::on_edge(g, g.graph().edge_index(edge), parse_rational(offset));
}

Divisor divisor(const GraphPtr& g, const std::vector<std::pair<GraphPoint, std::int64_t>>& terms) {
    Divisor d(g);
    for (const auto& [p, c] : terms) d.add_point(p, c);
    return d;
}

Graph simple_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("u" + std::to_string(i));
    std::vector<EdgeSpec> specs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        specs.push_back({"f" + std::to_string(i), ids[edges[i].first], ids[edges[i].second]});
    }
    return Graph(ids, specs);
}

}  // namespace fixtures

namespace oracle {

namespace {

struct Position {
    std::size_t edge;
    Rational offset;
    bool interior;
};

}  // namespace

Rational distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
    const Graph& graph = g.graph();
    const std::size_t n = graph.vertex_count();
    std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t v = 0; v < n; ++v) d[v][v] = Rational(0);
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        if (g.is_infinite(e)) throw std::invalid_argument("oracle distance needs a finite graph");
        const auto& edge = graph.edge(e);
        const Rational& len = g.length(e).value();
        auto relax = [&](std::size_t a, std::size_t b) {
            if (!d[a][b] || len < *d[a][b]) d[a][b] = len;
        };
        relax(edge.from, edge.to);
        relax(edge.to, edge.from);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) {
                    d[i][j] = Rational(*d[i][k] + *d[k][j]);
                }
            }
        }
    }
    // Each point reaches the graph's vertices through at most two exits.
    auto exits = [&](const GraphPoint& x) {
        std::vector<std::pair<std::size_t, Rational>> out;
        if (x.is_vertex()) {
            out.push_back({x.vertex(), Rational(0)});
        } else {
            const auto& edge = graph.edge(x.edge());
            out.push_back({edge.from, x.offset()});
            out.push_back({edge.to, g.length(x.edge()).value() - x.offset()});
        }
        return out;
    };
    std::optional<Rational> best;
    for (const auto& [a, da] : exits(p)) {
        for (const auto& [b, db] : exits(q)) {
            Rational total = da + *d[a][b] + db;
            if (!best || total < *best) best = total;
        }
    }
    if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge()) {
        Rational direct = abs(p.offset() - q.offset());
        if (direct < *best) best = direct;
    }
    return *best;
}

Lattice::Lattice(const Graph& g) : n_(g.vertex_count()), laplacian_(n_, std::vector<std::int64_t>(n_, 0)) {
    for (const auto& edge : g.edges()) {
        if (edge.is_loop()) throw std::invalid_argument("oracle lattice needs a loopless graph");
        laplacian_[edge.from][edge.from] += 1;
        laplacian_[edge.to][edge.to] += 1;
        laplacian_[edge.from][edge.to] -= 1;
        laplacian_[edge.to][edge.from] -= 1;
    }
    // Invert the Laplacian with row and column 0 removed, by Gauss-Jordan.
    const std::size_t m = n_ - 1;
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = Rational(static_cast<long>(laplacian_[i + 1][j + 1]));
        a[i][m + i] = 1;
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && a[pivot][col] == 0) ++pivot;
        if (pivot == m) throw std::invalid_argument("oracle lattice needs a connected graph");
        std::swap(a[pivot], a[col]);
        Rational inv = 1 / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational factor = a[r][col];
            for (std::size_t j = 0; j < 2 * m; ++j) a[r][j] -= factor * a[col][j];
        }
    }
    inverse_.assign(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) inverse_[i][j] = a[i][m + j];
    }
}

bool Lattice::equivalent(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    std::int64_t da = 0, db = 0;
    for (std::size_t v = 0; v < n_; ++v) {
        da += a[v];
        db += b[v];
    }
    if (da != db) return false;
    // Firing z moves -L z chips; solve L' z' = a - b on the rows v >= 1.
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        Rational z = 0;
        for (std::size_t j = 0; j + 1 < n_; ++j) z += inverse_[i][j] * (a[j + 1] - b[j + 1]);
        if (z.get_den() != 1) return false;
    }
    return true;
}

std::vector<std::int64_t> Lattice::fire(const std::vector<std::int64_t>& c, const std::vector<std::int64_t>& script) const {
    std::vector<std::int64_t> out = c;
    for (std::size_t v = 0; v < n_; ++v) {
        for (std::size_t w = 0; w < n_; ++w) out[v] -= laplacian_[v][w] * script[w];
    }
    return out;
}

bool reduced_by_subsets(const Lattice& l, const std::vector<std::int64_t>& c, std::size_t q) {
    const std::size_t n = l.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (v != q && c[v] < 0) return false;
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (mask >> q & 1) continue;
        bool fireable = true;
        for (std::size_t v = 0; v < n && fireable; ++v) {
            if (!(mask >> v & 1)) continue;
            std::int64_t leaving = 0;
            for (std::size_t w = 0; w < n; ++w) {
                if (w != v && !(mask >> w & 1)) leaving += l.edges_between(v, w);
            }
            if (c[v] < leaving) fireable = false;
        }
        if (fireable) return false;
    }
    return true;
}

std::vector<std::vector<std::int64_t>> reduced_forms(const Lattice& l, const std::vector<std::int64_t>& c,
                                                      std::size_t q) {
    const std::size_t n = l.size();
    std::int64_t degree = 0;
    for (auto x : c) degree += x;
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> cand(n, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (v == n) {
            std::int64_t rest = 0;
            for (std::size_t w = 0; w < n; ++w) {
                if (w != q) rest += cand[w];
            }
            cand[q] = degree - rest;
            if (reduced_by_subsets(l, cand, q) && l.equivalent(cand, c)) found.push_back(cand);
            return;
        }
        if (v == q) return walk(v + 1);
        for (std::int64_t x = 0; x < l.valence(v); ++x) {
            cand[v] = x;
            walk(v + 1);
        }
        cand[v] = 0;
    };
    walk(0);
    return found;
}

std::vector<std::vector<std::int64_t>> reduced_by_firing(const Lattice& l, const std::vector<std::int64_t>& c,
                                                          std::size_t q, std::int64_t bound) {
    const std::size_t n = l.size();
    std::set<std::vector<std::int64_t>> seen{c};
    std::deque<std::vector<std::int64_t>> queue{c};
    std::set<std::vector<std::int64_t>> found;
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        if (reduced_by_subsets(l, cur, q)) found.insert(cur);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::int64_t sign : {1, -1}) {
                std::vector<std::int64_t> script(n, 0);
                script[v] = sign;
                auto next = l.fire(cur, script);
                bool inside = std::all_of(next.begin(), next.end(), [&](std::int64_t x) { return x >= -bound && x <= bound; });
                if (inside && seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return {found.begin(), found.end()};
}

bool equivalent_to_effective(const Lattice& l, const std::vector<std::int64_t>& c) {
    std::int64_t degree = 0;
    for (auto x : c) degree += x;
    if (degree < 0) return false;
    const std::size_t n = l.size();
    std::vector<std::int64_t> e(n, 0);
    std::function<bool(std::size_t, std::int64_t)> walk = [&](std::size_t v, std::int64_t left) {
        if (v + 1 == n) {
            e[v] = left;
            return l.equivalent(e, c);
        }
        for (std::int64_t x = 0; x <= left; ++x) {
            e[v] = x;
            if (walk(v + 1, left - x)) return true;
        }
        e[v] = 0;
        return false;
    };
    return walk(0, degree);
}

std::int64_t rank(const Lattice& l, const std::vector<std::int64_t>& c) {
    const std::size_t n = l.size();
    std::int64_t degree = 0;
    for (auto x : c) degree += x;
    for (std::int64_t k = 0; k <= std::max<std::int64_t>(degree, 0); ++k) {
        // Every effective E of degree k.
        std::vector<std::int64_t> e(n, 0);
        std::function<bool(std::size_t, std::int64_t)> all_win = [&](std::size_t v, std::int64_t left) {
            if (v + 1 == n) {
                e[v] = left;
                std::vector<std::int64_t> diff(n);
                for (std::size_t w = 0; w < n; ++w) diff[w] = c[w] - e[w];
                return equivalent_to_effective(l, diff);
            }
            for (std::int64_t x = 0; x <= left; ++x) {
                e[v] = x;
                if (!all_win(v + 1, left - x)) return false;
            }
            e[v] = 0;
            return true;
        };
        if (!all_win(0, k)) return k - 1;
    }
    return degree;
}

std::vector<std::vector<EdgeIndex>> simple_cycles(const Graph& g) {
    const std::size_t m = g.edge_count();
    if (m > 20) throw std::invalid_argument("too many edges for subset enumeration");
    std::vector<std::vector<EdgeIndex>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> deg(g.vertex_count(), 0);
        std::vector<EdgeIndex> edges;
        for (EdgeIndex e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            edges.push_back(e);
            deg[g.edge(e).from] += 1;
            deg[g.edge(e).to] += 1;
        }
        if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) continue;
        // Connected: flood from the first edge's endpoint.
        std::vector<char> reached(g.vertex_count(), 0);
        std::vector<std::size_t> stack{g.edge(edges[0]).from};
        reached[stack[0]] = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (EdgeIndex e : edges) {
                const auto& edge = g.edge(e);
                for (auto [a, b] : {std::pair{edge.from, edge.to}, std::pair{edge.to, edge.from}}) {
                    if (a == v && !reached[b]) {
                        reached[b] = 1;
                        stack.push_back(b);
                    }
                }
            }
        }
        bool connected = true;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (deg[v] != 0 && !reached[v]) connected = false;
        }
        if (connected) out.push_back(edges);
    }
    return out;
}

Divisor principal_divisor(const RationalFunction& f) {
    const MetricGraph& g = f.graph();
    const Graph& graph = g.graph();
    Divisor out(f.host());
    auto slope = [](const Breakpoint& a, const Breakpoint& b) {
        Rational s = (b.value - a.value) / (b.offset - a.offset);
        if (s.get_den() != 1) throw std::logic_error("non-integer slope");
        return s.get_num().get_si();
    };
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& piece = f.piece(e);
        const auto& bps = piece.breakpoints;
        const auto& edge = graph.edge(e);
        std::vector<std::int64_t> slopes;
        for (std::size_t i = 0; i + 1 < bps.size(); ++i) slopes.push_back(slope(bps[i], bps[i + 1]));
        if (g.is_infinite(e)) slopes.push_back(piece.end_slope);
        out.add_point(GraphPoint::at_vertex(edge.from), slopes.front());
        for (std::size_t i = 1; i < slopes.size(); ++i) {
            out.add_point(GraphPoint::on_edge(g, e, bps[i].offset), slopes[i] - slopes[i - 1]);
        }
        out.add_point(GraphPoint::at_vertex(edge.to), -slopes.back());
    }
    return out;
}

}  // namespace oracle
