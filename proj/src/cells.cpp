#include "tropical/cells.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <set>

namespace tropical {

namespace {

// ---------------------------------------------------------------------------
// Fourier-Motzkin elimination over exact rationals.

// a . y < b (strict) or a . y <= b.
struct Constraint {
    std::vector<Rational> a;
    Rational b;
    bool strict = false;
};

bool is_constant(const Constraint& c) {
    return std::all_of(c.a.begin(), c.a.end(), [](const Rational& x) { return x == 0; });
}

bool constant_holds(const Constraint& c) { return c.strict ? 0 < c.b : 0 <= c.b; }

// Scales so that the first nonzero coefficient has absolute value 1.
void normalise(Constraint& c) {
    for (const auto& x : c.a) {
        if (x != 0) {
            Rational f = abs(x);
            for (auto& y : c.a) y /= f;
            c.b /= f;
            return;
        }
    }
}

struct ConstraintLess {
    bool operator()(const Constraint& x, const Constraint& y) const {
        for (std::size_t i = 0; i < x.a.size(); ++i) {
            if (int c = cmp(x.a[i], y.a[i]); c != 0) return c < 0;
        }
        if (int c = cmp(x.b, y.b); c != 0) return c < 0;
        return x.strict < y.strict;
    }
};

// Eliminates variable j. Returns nullopt if a constant constraint fails.
std::optional<std::vector<Constraint>> eliminate(const std::vector<Constraint>& in, std::size_t j) {
    std::vector<const Constraint*> pos, neg;
    std::set<Constraint, ConstraintLess> out;
    auto keep = [&](Constraint c) -> bool {
        normalise(c);
        if (is_constant(c)) return constant_holds(c);
        out.insert(std::move(c));
        return true;
    };
    for (const auto& c : in) {
        int s = sgn(c.a[j]);
        if (s > 0) {
            pos.push_back(&c);
        } else if (s < 0) {
            neg.push_back(&c);
        } else if (!keep(c)) {
            return std::nullopt;
        }
    }
    for (const Constraint* p : pos) {
        for (const Constraint* n : neg) {
            Rational wp = -n->a[j];
            Rational wn = p->a[j];
            Constraint c;
            c.a.resize(p->a.size());
            for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] = p->a[i] * wp + n->a[i] * wn;
            c.a[j] = 0;
            c.b = p->b * wp + n->b * wn;
            c.strict = p->strict || n->strict;
            if (!keep(std::move(c))) return std::nullopt;
        }
    }
    return std::vector<Constraint>(out.begin(), out.end());
}

void substitute(std::vector<Constraint>& cs, std::size_t j, const Rational& value) {
    for (auto& c : cs) {
        if (c.a[j] != 0) {
            c.b -= c.a[j] * value;
            c.a[j] = 0;
        }
    }
}

struct Interval {
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
};

// Bounds on variable j from constraints that mention only j.
std::optional<Interval> interval_of(const std::vector<Constraint>& cs, std::size_t j) {
    Interval iv;
    for (const auto& c : cs) {
        int s = sgn(c.a[j]);
        if (s == 0) {
            if (is_constant(c) && !constant_holds(c)) return std::nullopt;
            continue;
        }
        Rational bound = c.b / c.a[j];
        if (s > 0) {
            if (!iv.hi || bound < *iv.hi || (bound == *iv.hi && c.strict)) {
                iv.hi = bound;
                iv.hi_strict = c.strict;
            }
        } else {
            if (!iv.lo || bound > *iv.lo || (bound == *iv.lo && c.strict)) {
                iv.lo = bound;
                iv.lo_strict = c.strict;
            }
        }
    }
    if (iv.lo && iv.hi) {
        if (*iv.lo > *iv.hi) return std::nullopt;
        if (*iv.lo == *iv.hi && (iv.lo_strict || iv.hi_strict)) return std::nullopt;
    }
    return iv;
}

Rational pick(const Interval& iv) {
    if (iv.lo && iv.hi) return (*iv.lo + *iv.hi) / 2;
    if (iv.lo) return *iv.lo + 1;
    if (iv.hi) return *iv.hi - 1;
    return 0;
}

// Projection of the constraints onto variable j (all others eliminated).
std::optional<Interval> project(std::vector<Constraint> cs, std::size_t j, std::size_t nvars) {
    for (std::size_t i = 0; i < nvars; ++i) {
        if (i == j) continue;
        auto next = eliminate(cs, i);
        if (!next) return std::nullopt;
        cs = std::move(*next);
    }
    return interval_of(cs, j);
}

// A point satisfying every constraint, if one exists.
std::optional<std::vector<Rational>> solve(const std::vector<Constraint>& cs, std::size_t nvars) {
    // stages[i] mentions only variables 0..i-1.
    std::vector<std::vector<Constraint>> stages(nvars + 1);
    stages[nvars] = cs;
    for (std::size_t i = nvars; i-- > 0;) {
        auto next = eliminate(stages[i + 1], i);
        if (!next) return std::nullopt;
        stages[i] = std::move(*next);
    }
    for (const auto& c : stages[0]) {
        if (!constant_holds(c)) return std::nullopt;
    }
    std::vector<Rational> y(nvars);
    for (std::size_t i = 0; i < nvars; ++i) {
        std::vector<Constraint> current = stages[i + 1];
        for (std::size_t k = 0; k < i; ++k) substitute(current, k, y[k]);
        auto iv = interval_of(current, i);
        if (!iv) return std::nullopt;
        y[i] = pick(*iv);
    }
    return y;
}

// ---------------------------------------------------------------------------
// Per-placement linear system.

// Affine integer form c . s + k in the free slopes.
struct Affine {
    std::vector<Rational> coeff;
    Rational constant;
};

struct Model {
    const MetricGraph* g = nullptr;
    std::size_t vertices = 0;
    std::vector<EdgeIndex> free_edges;  // non-tree edges, loops included
    std::vector<std::optional<EdgeIndex>> parent_edge;
    std::vector<VertexIndex> bfs_order;
    // Interior points of D on each edge: (offset, coefficient).
    std::vector<std::vector<std::pair<Rational, std::int64_t>>> interior;
    std::vector<std::int64_t> at_vertex;
    Rational bound;
};

Model build_model(const Divisor& d, const Integer& bound) {
    const MetricGraph& g = d.graph();
    const Graph& graph = g.graph();
    Model m;
    m.g = &g;
    m.vertices = graph.vertex_count();
    m.bound = Rational(bound);
    m.parent_edge.assign(m.vertices, std::nullopt);
    std::vector<bool> seen(m.vertices, false), tree_edge(graph.edge_count(), false);
    std::deque<VertexIndex> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        VertexIndex v = queue.front();
        queue.pop_front();
        m.bfs_order.push_back(v);
        for (const auto& inc : graph.incidences(v)) {
            const auto& edge = graph.edge(inc.edge);
            VertexIndex w = inc.at_from ? edge.to : edge.from;
            if (seen[w]) continue;
            seen[w] = true;
            tree_edge[inc.edge] = true;
            m.parent_edge[w] = inc.edge;
            queue.push_back(w);
        }
    }
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        if (!tree_edge[e]) m.free_edges.push_back(e);
    }
    m.interior.resize(graph.edge_count());
    m.at_vertex.assign(m.vertices, 0);
    for (const auto& [p, c] : d.terms()) {
        if (p.is_vertex()) {
            m.at_vertex[p.vertex()] += c;
        } else {
            m.interior[p.edge()].emplace_back(p.offset(), c);
        }
    }
    return m;
}

// Row-reduced system A (x, t) = R s + r for one placement.
struct PlacementSystem {
    std::size_t nx = 0, nt = 0, ns = 0;
    std::vector<EdgeIndex> t_edge;          // edge of each t variable
    std::vector<std::size_t> t_of_point;    // point index -> t index (or SIZE_MAX)
    std::vector<Affine> slope;              // per edge, in the free slopes
    std::vector<std::vector<Rational>> rows;  // [A | R | r] after reduction
    std::vector<std::size_t> pivot_col;     // per reduced row with a pivot in A
    std::size_t rank = 0;
    bool slopes_consistent = true;
};

PlacementSystem build_system(const Model& m, const std::vector<Location>& placement) {
    const Graph& graph = m.g->graph();
    PlacementSystem sys;
    sys.nx = m.vertices;
    sys.ns = m.free_edges.size();
    sys.t_of_point.assign(placement.size(), SIZE_MAX);
    std::vector<std::int64_t> points_on_edge(graph.edge_count(), 0);
    std::vector<std::int64_t> points_at_vertex(m.vertices, 0);
    for (std::size_t i = 0; i < placement.size(); ++i) {
        if (placement[i].is_vertex) {
            ++points_at_vertex[placement[i].index];
        } else {
            sys.t_of_point[i] = sys.nt++;
            sys.t_edge.push_back(placement[i].index);
            ++points_on_edge[placement[i].index];
        }
    }

    // Net slope change along each edge.
    std::vector<std::int64_t> sigma(graph.edge_count());
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        sigma[e] = points_on_edge[e];
        for (const auto& [x, c] : m.interior[e]) sigma[e] -= c;
    }
    // Vertex equations: sum_{from=v} s_e - sum_{to=v} s_e = c_v.
    std::vector<Rational> c(m.vertices);
    for (VertexIndex v = 0; v < m.vertices; ++v) c[v] = points_at_vertex[v] - m.at_vertex[v];
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) c[graph.edge(e).to] += sigma[e];

    sys.slope.assign(graph.edge_count(), Affine{std::vector<Rational>(sys.ns), Rational(0)});
    for (std::size_t j = 0; j < sys.ns; ++j) sys.slope[m.free_edges[j]].coeff[j] = 1;
    for (std::size_t i = m.bfs_order.size(); i-- > 1;) {
        VertexIndex v = m.bfs_order[i];
        EdgeIndex pe = *m.parent_edge[v];
        Affine rest{std::vector<Rational>(sys.ns), c[v]};
        int pe_sign = 0;
        for (const auto& inc : graph.incidences(v)) {
            int sign = inc.at_from ? 1 : -1;
            if (inc.edge == pe) {
                pe_sign = sign;
                continue;
            }
            const Affine& a = sys.slope[inc.edge];
            for (std::size_t j = 0; j < sys.ns; ++j) rest.coeff[j] -= sign * a.coeff[j];
            rest.constant -= sign * a.constant;
        }
        for (auto& x : rest.coeff) x *= pe_sign;
        rest.constant *= pe_sign;
        sys.slope[pe] = std::move(rest);
    }

    // Continuity along each edge:
    // x_to - x_from + sum t_i = L s_e + n_e L - sum_{D interior} D(x) (L - x).
    const std::size_t width = sys.nx + sys.nt + sys.ns + 1;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const auto& edge = graph.edge(e);
        const Rational& len = m.g->length(e).value();
        std::vector<Rational> row(width);
        row[edge.to] += 1;
        row[edge.from] -= 1;
        for (std::size_t t = 0; t < sys.nt; ++t) {
            if (sys.t_edge[t] == e) row[sys.nx + t] += 1;
        }
        for (std::size_t j = 0; j < sys.ns; ++j) row[sys.nx + sys.nt + j] = len * sys.slope[e].coeff[j];
        Rational rhs = len * sys.slope[e].constant + points_on_edge[e] * len;
        for (const auto& [x, coeff] : m.interior[e]) rhs -= coeff * (len - x);
        row[width - 1] = rhs;
        sys.rows.push_back(std::move(row));
    }

    // Gauss-Jordan with pivots restricted to the (x, t) columns.
    const std::size_t ncols = sys.nx + sys.nt;
    std::size_t r = 0;
    for (std::size_t col = 0; col < ncols && r < sys.rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < sys.rows.size() && sys.rows[piv][col] == 0) ++piv;
        if (piv == sys.rows.size()) continue;
        std::swap(sys.rows[r], sys.rows[piv]);
        Rational inv = 1 / sys.rows[r][col];
        for (auto& x : sys.rows[r]) x *= inv;
        for (std::size_t i = 0; i < sys.rows.size(); ++i) {
            if (i == r || sys.rows[i][col] == 0) continue;
            Rational f = sys.rows[i][col];
            for (std::size_t k = 0; k < width; ++k) sys.rows[i][k] -= f * sys.rows[r][k];
        }
        sys.pivot_col.push_back(col);
        ++r;
    }
    sys.rank = r;
    return sys;
}

// Feasibility constraints over y = (free t variables, free slopes).
struct Feasibility {
    std::vector<std::size_t> free_t;   // t index of each leading y variable
    std::vector<Constraint> constraints;
    std::size_t nvars = 0;
    std::vector<std::optional<Affine>> t_form;  // pivot t in terms of y (coeff over y)
};

Feasibility build_feasibility(const Model& m, const PlacementSystem& sys) {
    Feasibility f;
    std::vector<std::optional<std::size_t>> pivot_row_of_t(sys.nt);
    for (std::size_t r = 0; r < sys.rank; ++r) {
        std::size_t col = sys.pivot_col[r];
        if (col >= sys.nx) pivot_row_of_t[col - sys.nx] = r;
    }
    std::vector<std::size_t> y_of_t(sys.nt, SIZE_MAX);
    for (std::size_t t = 0; t < sys.nt; ++t) {
        if (!pivot_row_of_t[t]) {
            y_of_t[t] = f.free_t.size();
            f.free_t.push_back(t);
        }
    }
    const std::size_t nf = f.free_t.size();
    f.nvars = nf + sys.ns;
    const std::size_t s_col = sys.nx + sys.nt;
    const std::size_t width = s_col + sys.ns + 1;

    // Each t as an affine form over y.
    std::vector<Affine> t_aff(sys.nt, Affine{std::vector<Rational>(f.nvars), Rational(0)});
    for (std::size_t t = 0; t < sys.nt; ++t) {
        if (!pivot_row_of_t[t]) {
            t_aff[t].coeff[y_of_t[t]] = 1;
            continue;
        }
        const auto& row = sys.rows[*pivot_row_of_t[t]];
        t_aff[t].constant = row[width - 1];
        for (std::size_t j = 0; j < sys.ns; ++j) t_aff[t].coeff[nf + j] = row[s_col + j];
        for (std::size_t u = 0; u < sys.nt; ++u) {
            if (u != t && row[sys.nx + u] != 0) t_aff[t].coeff[y_of_t[u]] = -row[sys.nx + u];
        }
    }
    f.t_form.assign(sys.nt, std::nullopt);
    for (std::size_t t = 0; t < sys.nt; ++t) {
        if (pivot_row_of_t[t]) f.t_form[t] = t_aff[t];
    }

    auto add = [&](std::vector<Rational> a, Rational b, bool strict) {
        f.constraints.push_back(Constraint{std::move(a), std::move(b), strict});
    };
    for (std::size_t t = 0; t < sys.nt; ++t) {
        const Rational& len = m.g->length(sys.t_edge[t]).value();
        std::vector<Rational> neg(f.nvars);
        for (std::size_t i = 0; i < f.nvars; ++i) neg[i] = -t_aff[t].coeff[i];
        add(neg, t_aff[t].constant, true);                  // t > 0
        add(t_aff[t].coeff, len - t_aff[t].constant, true);  // t < L
    }
    // Starting slopes within the bound.
    for (EdgeIndex e = 0; e < sys.slope.size(); ++e) {
        std::vector<Rational> a(f.nvars), na(f.nvars);
        for (std::size_t j = 0; j < sys.ns; ++j) {
            a[nf + j] = sys.slope[e].coeff[j];
            na[nf + j] = -sys.slope[e].coeff[j];
        }
        add(a, m.bound - sys.slope[e].constant, false);
        add(na, m.bound + sys.slope[e].constant, false);
    }
    // Rows without a pivot: equalities in the slopes alone.
    for (std::size_t r = sys.rank; r < sys.rows.size(); ++r) {
        const auto& row = sys.rows[r];
        std::vector<Rational> a(f.nvars), na(f.nvars);
        for (std::size_t j = 0; j < sys.ns; ++j) {
            a[nf + j] = row[s_col + j];
            na[nf + j] = -row[s_col + j];
        }
        // 0 = R s + r  ->  -R s <= r and R s <= -r.
        add(na, row[width - 1], false);
        add(a, -row[width - 1], false);
    }
    return f;
}

std::string orbit_key(const MetricGraph& g, const CellSignature& sig) {
    std::vector<Location> sorted = sig.placement;
    std::sort(sorted.begin(), sorted.end());
    std::string key;
    for (const auto& loc : sorted) key += location_label(g, loc) + ";";
    key += "|";
    for (auto s : sig.slopes) key += std::to_string(s) + ";";
    return key;
}

struct PlacementResult {
    std::vector<Cell> cells;
    bool truncated = false;
};

PlacementResult cells_for_placement(const Model& m, const std::vector<Location>& placement, std::size_t limit) {
    PlacementResult out;
    PlacementSystem sys = build_system(m, placement);
    Feasibility feas = build_feasibility(m, sys);
    const std::size_t nf = feas.free_t.size();
    const int dimension = static_cast<int>(sys.nx + sys.nt - sys.rank);
    const std::size_t s_col = sys.nx + sys.nt;
    const std::size_t width = s_col + sys.ns + 1;

    std::vector<Rational> s_values(sys.ns);
    auto emit = [&](const std::vector<Constraint>& fixed) {
        auto y = solve(fixed, feas.nvars);
        if (!y) return;
        for (std::size_t j = 0; j < sys.ns; ++j) (*y)[nf + j] = s_values[j];
        std::vector<Rational> t(sys.nt);
        for (std::size_t k = 0; k < nf; ++k) t[feas.free_t[k]] = (*y)[k];
        for (std::size_t k = 0; k < sys.nt; ++k) {
            if (!feas.t_form[k]) continue;
            Rational v = feas.t_form[k]->constant;
            for (std::size_t i = 0; i < feas.nvars; ++i) v += feas.t_form[k]->coeff[i] * (*y)[i];
            t[k] = v;
        }
        // Vertex values: pivots from their rows, free ones zero.
        std::vector<Rational> x(sys.nx);
        for (std::size_t r = 0; r < sys.rank; ++r) {
            std::size_t col = sys.pivot_col[r];
            if (col >= sys.nx) continue;
            const auto& row = sys.rows[r];
            Rational v = row[width - 1];
            for (std::size_t j = 0; j < sys.ns; ++j) v += row[s_col + j] * s_values[j];
            for (std::size_t k = 0; k < sys.nt; ++k) v -= row[sys.nx + k] * t[k];
            x[col] = v;
        }
        Cell cell;
        cell.signature.placement = placement;
        for (const auto& a : sys.slope) {
            Rational v = a.constant;
            for (std::size_t j = 0; j < sys.ns; ++j) v += a.coeff[j] * s_values[j];
            cell.signature.slopes.push_back(to_int64(v));
        }
        cell.dimension = dimension;
        cell.feasible = true;
        for (std::size_t i = 0; i < placement.size(); ++i) {
            if (sys.t_of_point[i] == SIZE_MAX) {
                cell.sample_offsets.emplace_back(std::nullopt);
            } else {
                cell.sample_offsets.emplace_back(t[sys.t_of_point[i]]);
            }
        }
        cell.sample_values = std::move(x);
        cell.orbit = orbit_key(*m.g, cell.signature);
        out.cells.push_back(std::move(cell));
    };

    // Integer slopes one at a time, each within the projection of what is
    // still feasible.
    auto recurse = [&](auto&& self, std::size_t j, const std::vector<Constraint>& cs) -> void {
        if (out.truncated) return;
        if (j == sys.ns) {
            emit(cs);
            return;
        }
        auto iv = project(cs, nf + j, feas.nvars);
        if (!iv) return;
        if (!iv->lo || !iv->hi) throw std::logic_error("slope range must be bounded");
        Integer lo = iv->lo_strict ? Integer(floor_of(*iv->lo) + 1) : ceil_of(*iv->lo);
        Integer hi = iv->hi_strict ? Integer(ceil_of(*iv->hi) - 1) : floor_of(*iv->hi);
        for (Integer v = lo; v <= hi; ++v) {
            if (out.cells.size() >= limit) {
                out.truncated = true;
                return;
            }
            s_values[j] = Rational(v);
            std::vector<Constraint> next = cs;
            substitute(next, nf + j, s_values[j]);
            self(self, j + 1, next);
        }
    };
    recurse(recurse, 0, feas.constraints);
    return out;
}

}  // namespace

std::string location_label(const MetricGraph& g, const Location& loc) {
    if (loc.is_vertex) return g.graph().vertex_id(loc.index);
    return g.graph().edge(loc.index).id;
}

CellReport enumerate_cells(const Divisor& d, const CellCaps& caps) {
    const MetricGraph& g = d.graph();
    if (g.has_infinite_edges()) throw InvalidArgument("cell enumeration needs a graph without infinite edges");
    CellReport report;
    std::int64_t positive = 0;
    for (const auto& [p, c] : d.terms()) {
        if (c > 0) positive += c;
    }
    report.poles = static_cast<int>(std::max<std::int64_t>(1, positive));
    report.slope_bound = slope_bound(g.graph(), report.poles);
    const std::int64_t n = d.degree();
    if (g.graph().edge_count() > caps.max_edges || n > caps.max_degree) {
        report.truncated = true;
        return report;
    }
    if (n < 0) return report;

    Model m = build_model(d, report.slope_bound);
    std::vector<Location> locations;
    for (VertexIndex v = 0; v < g.graph().vertex_count(); ++v) locations.push_back({true, v});
    for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) locations.push_back({false, e});

    std::size_t total = 1;
    for (std::int64_t i = 0; i < n; ++i) total *= locations.size();
    std::vector<PlacementResult> results(total);
    std::exception_ptr error;
    const std::int64_t count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        std::vector<Location> placement(static_cast<std::size_t>(n));
        std::size_t rest = static_cast<std::size_t>(idx);
        for (std::size_t i = placement.size(); i-- > 0;) {
            placement[i] = locations[rest % locations.size()];
            rest /= locations.size();
        }
        try {
            results[static_cast<std::size_t>(idx)] = cells_for_placement(m, placement, caps.max_cells);
        } catch (...) {
#pragma omp critical(tropical_cells_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    for (auto& r : results) {
        if (r.truncated) report.truncated = true;
        for (auto& c : r.cells) {
            if (report.cells.size() >= caps.max_cells) {
                report.truncated = true;
                break;
            }
            ++report.dimension_counts[c.dimension];
            report.cells.push_back(std::move(c));
        }
    }
    return report;
}

int max_cell_dimension(const CellReport& report) {
    int best = -1;
    for (const auto& c : report.cells) {
        if (c.feasible) best = std::max(best, c.dimension);
    }
    return best;
}

Divisor cell_points(const Divisor& d, const Cell& cell) {
    Divisor out(d.host());
    for (std::size_t i = 0; i < cell.signature.placement.size(); ++i) {
        const auto& loc = cell.signature.placement[i];
        if (loc.is_vertex) {
            out.add_point(GraphPoint::at_vertex(loc.index), 1);
        } else {
            out.add_point(GraphPoint::on_edge(d.graph(), loc.index, *cell.sample_offsets.at(i)), 1);
        }
    }
    return out;
}

RationalFunction cell_function(const Divisor& d, const Cell& cell) {
    const MetricGraph& g = d.graph();
    const Graph& graph = g.graph();
    std::vector<std::map<Rational, std::int64_t>> events(graph.edge_count());
    for (std::size_t i = 0; i < cell.signature.placement.size(); ++i) {
        const auto& loc = cell.signature.placement[i];
        if (!loc.is_vertex) events[loc.index][*cell.sample_offsets.at(i)] += 1;
    }
    for (const auto& [p, c] : d.terms()) {
        if (!p.is_vertex()) events[p.edge()][p.offset()] -= c;
    }
    std::vector<RationalFunction::EdgePiece> pieces;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
        const Rational& len = g.length(e).value();
        RationalFunction::EdgePiece piece;
        Rational offset = 0;
        Rational value = cell.sample_values.at(graph.edge(e).from);
        Rational slope(static_cast<long>(cell.signature.slopes.at(e)));
        piece.breakpoints.push_back({offset, value});
        for (const auto& [t, change] : events[e]) {
            value += slope * (t - offset);
            offset = t;
            piece.breakpoints.push_back({offset, value});
            slope += change;
        }
        value += slope * (len - offset);
        piece.breakpoints.push_back({len, value});
        pieces.push_back(std::move(piece));
    }
    Rational isolated = cell.sample_values.empty() ? Rational(0) : cell.sample_values[0];
    return RationalFunction(d.host(), std::move(pieces), isolated);
}

}  // namespace tropical
