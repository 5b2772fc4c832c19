#include "tropical/rank.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>

namespace tropical {

namespace {

struct RankSetup {
    UnitSubdivision sub;
    ChipGraph chips;
    VertexIndex q;
};

RankSetup setup(const GraphPtr& g) {
    UnitSubdivision sub = unit_subdivide(g);
    ChipGraph chips(sub.graph);
    VertexIndex q = base_vertex(g->graph());
    return RankSetup{std::move(sub), std::move(chips), q};
}

ChipConfiguration to_configuration(const UnitSubdivision& sub, const Divisor& d) {
    ChipConfiguration c{std::vector<std::int64_t>(sub.graph.vertex_count(), 0)};
    for (const auto& [p, coeff] : d.terms()) {
        if (!is_integral_point(d.graph(), p)) throw InvalidArgument("divisor is not supported on integer points");
        c.chips[sub.vertex_of(p)] += coeff;
    }
    return c;
}

Divisor from_configuration(const UnitSubdivision& sub, const ChipConfiguration& c) {
    Divisor d(sub.host);
    for (VertexIndex v = 0; v < c.chips.size(); ++v) d.add_point(sub.points[v], c.chips[v]);
    return d;
}

// Integer function on unit vertices -> piecewise-linear function on the host.
RationalFunction from_script(const UnitSubdivision& sub, const std::vector<std::int64_t>& script) {
    const MetricGraph& g = *sub.host;
    std::vector<RationalFunction::EdgePiece> pieces;
    for (EdgeIndex e = 0; e < g.graph().edge_count(); ++e) {
        const auto& edge = g.graph().edge(e);
        std::int64_t n = to_int64(g.length(e).value());
        RationalFunction::EdgePiece piece;
        for (std::int64_t k = 0; k <= n; ++k) {
            VertexIndex v = k == 0 ? edge.from : (k == n ? edge.to : sub.edge_base[e] + static_cast<VertexIndex>(k - 1));
            piece.breakpoints.push_back({Rational(static_cast<long>(k)), Rational(static_cast<long>(script[v]))});
        }
        pieces.push_back(std::move(piece));
    }
    Rational isolated = script.empty() ? Rational(0) : Rational(static_cast<long>(script[0]));
    return RationalFunction(sub.host, std::move(pieces), isolated);
}

std::vector<VertexIndex> candidate_vertices(const UnitSubdivision& sub, CandidatePoints mode) {
    std::vector<VertexIndex> out;
    if (mode == CandidatePoints::All) {
        for (VertexIndex v = 0; v < sub.graph.vertex_count(); ++v) out.push_back(v);
        return out;
    }
    const Graph& host = sub.host->graph();
    for (VertexIndex v = 0; v < host.vertex_count(); ++v) out.push_back(v);
    for (EdgeIndex e = 0; e < host.edge_count(); ++e) {
        if (!host.edge(e).is_loop()) continue;
        std::int64_t n = to_int64(sub.host->length(e).value());
        out.push_back(sub.edge_base[e] + static_cast<VertexIndex>(n / 2 - 1));
    }
    return out;
}

// Advances a nondecreasing index tuple over [0, n); false after the last.
bool next_multiset(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] == n - 1) --k;
    if (k == 0) return false;
    std::size_t value = idx[k - 1] + 1;
    for (std::size_t i = k - 1; i < idx.size(); ++i) idx[i] = value;
    return true;
}

class RankSearch {
public:
    RankSearch(const RankSetup& s, ChipConfiguration base, std::vector<VertexIndex> candidates)
        : s_(s), base_(std::move(base)), cand_(std::move(candidates)) {
        reduced_at_.reserve(cand_.size());
        for (VertexIndex v : cand_) reduced_at_.push_back(dhar_reduce(s_.chips, base_, v).chips);
    }

    std::size_t candidate_count() const { return cand_.size(); }
    VertexIndex candidate(std::size_t i) const { return cand_[i]; }

    // Whether base - E is equivalent to an effective configuration. A
    // vertex x of E whose x-reduced form covers E away from x decides the
    // question directly, since removing chips keeps a form x-reduced.
    bool survives(const std::vector<std::size_t>& e) const {
        if (e.empty()) return wins_effective(s_.chips, base_, s_.q);
        std::vector<std::pair<std::size_t, std::int64_t>> groups;
        for (std::size_t i : e) {
            if (!groups.empty() && groups.back().first == i) {
                ++groups.back().second;
            } else {
                groups.emplace_back(i, 1);
            }
        }
        for (const auto& [xi, xc] : groups) {
            const auto& dx = reduced_at_[xi];
            bool covers = true;
            for (const auto& [yi, yc] : groups) {
                if (yi != xi && dx[cand_[yi]] < yc) {
                    covers = false;
                    break;
                }
            }
            if (covers) return dx[cand_[xi]] >= xc;
        }
        ChipConfiguration c = base_;
        for (const auto& [yi, yc] : groups) c.chips[cand_[yi]] -= yc;
        return wins_effective(s_.chips, c, cand_[groups.front().first]);
    }

private:
    const RankSetup& s_;
    ChipConfiguration base_;
    std::vector<VertexIndex> cand_;
    std::vector<std::vector<std::int64_t>> reduced_at_;
};

// Index of the first failing multiset in the chunk, if any.
std::optional<std::size_t> first_failure(const RankSearch& search, const std::vector<std::vector<std::size_t>>& chunk,
                                         Execution execution) {
    std::atomic<std::size_t> best{SIZE_MAX};
    std::exception_ptr error;
    const std::int64_t count = static_cast<std::int64_t>(chunk.size());
#pragma omp parallel for schedule(dynamic, 8) if (execution == Execution::Parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        auto idx = static_cast<std::size_t>(i);
        if (idx >= best.load(std::memory_order_relaxed)) continue;
        bool ok = true;
        try {
            ok = search.survives(chunk[idx]);
        } catch (...) {
#pragma omp critical(tropical_rank_error)
            if (!error) error = std::current_exception();
        }
        if (!ok) {
            std::size_t cur = best.load();
            while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
            }
        }
    }
    if (error) std::rethrow_exception(error);
    if (best.load() == SIZE_MAX) return std::nullopt;
    return best.load();
}

void collect_scale_terms(const Divisor& d, Integer& denominators) {
    for (const auto& [p, c] : d.terms()) {
        if (!p.is_vertex()) denominators = lcm(denominators, Integer(p.offset().get_den()));
    }
}

Integer scale_for(const GraphPtr& g, const std::vector<const Divisor*>& divisors) {
    Integer s = 1;
    for (EdgeIndex e = 0; e < g->graph().edge_count(); ++e) {
        if (!g->is_infinite(e)) s = lcm(s, Integer(g->length(e).value().get_den()));
    }
    for (const Divisor* d : divisors) collect_scale_terms(*d, s);
    for (EdgeIndex e = 0; e < g->graph().edge_count(); ++e) {
        if (g->graph().edge(e).is_loop() && g->length(e).value() * Rational(s) == 1) {
            s *= 2;
            break;
        }
    }
    return s;
}

Integer lcm_up_to(int k) {
    Integer out = 1;
    for (int i = 2; i <= k; ++i) out = lcm(out, Integer(i));
    return out;
}

}  // namespace

VertexIndex base_vertex(const Graph& g) {
    VertexIndex best = 0;
    for (VertexIndex v = 1; v < g.vertex_count(); ++v) {
        if (g.vertex_id(v) < g.vertex_id(best)) best = v;
    }
    return best;
}

Integer integral_scale(const Divisor& d) {
    if (d.graph().has_infinite_edges()) throw InvalidArgument("integral scale needs a finite graph");
    return scale_for(d.host(), {&d});
}

DiscreteRank discrete_rank(const Divisor& d, const RankOptions& options) {
    const GraphPtr& g = d.host();
    if (g->has_infinite_edges() || !g->is_integral()) throw InvalidArgument("discrete rank needs a finite integral graph");
    if (!is_integral_divisor(d)) throw InvalidArgument("divisor is not supported on integer points");
    RankSetup s = setup(g);
    ChipConfiguration base = to_configuration(s.sub, d);
    std::int64_t deg = d.degree();
    if (deg < 0) return DiscreteRank{-1, Divisor(g)};

    RankSearch search(s, base, candidate_vertices(s.sub, options.candidates));
    const std::size_t n = search.candidate_count();
    constexpr std::size_t chunk_size = 4096;

    auto witness_of = [&](const std::vector<std::size_t>& e) {
        Divisor w(g);
        for (std::size_t i : e) w.add_point(s.sub.points[search.candidate(i)], 1);
        return w;
    };

    for (std::int64_t k = 0; k <= deg + 1; ++k) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        bool more = true;
        std::vector<std::vector<std::size_t>> chunk;
        while (more) {
            chunk.clear();
            while (more && chunk.size() < chunk_size) {
                chunk.push_back(idx);
                more = k > 0 && next_multiset(idx, n);
            }
            if (auto fail = first_failure(search, chunk, options.execution)) {
                return DiscreteRank{k - 1, witness_of(chunk[*fail])};
            }
        }
    }
    throw std::logic_error("degree + 1 points must always fail");
}

RankReport metric_rank(const Divisor& d, const RankOptions& options) {
    const GraphPtr& g = d.host();
    if (g->has_infinite_edges()) throw InvalidArgument("metric rank needs a graph without infinite edges");
    if (options.scale_cap < 1) throw InvalidArgument("scale cap must be at least 1");
    Integer s0 = integral_scale(d);

    RankReport report;
    std::optional<std::int64_t> previous;
    for (int k = 1; k <= options.scale_cap; ++k) {
        Integer s = s0 * lcm_up_to(k);
        Rescaled r = rescale(g, Rational(s));
        DiscreteRank dr = discrete_rank(transport(d, r), options);
        report.scales_tested.push_back(to_int64(s));
        if (!report.witness || dr.rank < report.rank) {
            report.rank = dr.rank;
            report.witness = transport_back(dr.witness, r, g);
        }
        if (previous && *previous == dr.rank) {
            report.stabilized = true;
            break;
        }
        previous = dr.rank;
    }
    return report;
}

RankReport tropical_rank(const Divisor& d, const RankOptions& options) {
    CoreRetraction r = retract_core(d.host());
    RetractedDivisor moved = retract_divisor(d);
    RankReport report = metric_rank(to_core(moved.divisor, r), options);
    if (report.witness) report.witness = to_curve(*report.witness, r);
    return report;
}

Equivalence linear_equiv(const Divisor& d1, const Divisor& d2) {
    require_same_host(d1.host(), d2.host());
    if (d1.degree() != d2.degree()) return Equivalence{false, std::nullopt};

    CoreRetraction r = retract_core(d1.host());
    Divisor c1 = to_core(retract_divisor(d1).divisor, r);
    Divisor c2 = to_core(retract_divisor(d2).divisor, r);

    Integer s = scale_for(c1.host(), {&c1, &c2});
    Rescaled scaled = rescale(c1.host(), Rational(s));
    RankSetup setup_s = setup(scaled.graph);
    Reduction red1 = dhar_reduce_with_script(setup_s.chips, to_configuration(setup_s.sub, transport(c1, scaled)), setup_s.q);
    Reduction red2 =
        dhar_reduce_with_script(setup_s.chips, to_configuration(setup_s.sub, transport(c2, scaled)), setup_s.q);
    if (red1.reduced != red2.reduced) return Equivalence{false, std::nullopt};

    // c2 = c1 + div(script1 - script2) at the integer scale.
    std::vector<std::int64_t> diff(red1.script.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = red1.script[i] - red2.script[i];
    RationalFunction core_f = transport_back(from_script(setup_s.sub, diff), scaled, c1.host());
    RationalFunction f = to_curve(core_f, r);
    // d_i = c_i - (ramps of d_i); the ramp parts combine linearly, which
    // avoids infinity minus infinity at shared unbounded ends.
    f = add(f, retract_divisor(d1 - d2).function);
    return Equivalence{true, std::move(f)};
}

Divisor reduce_divisor(const Divisor& d, std::optional<VertexIndex> base) {
    CoreRetraction r = retract_core(d.host());
    Divisor core_d = to_core(retract_divisor(d).divisor, r);
    Rescaled scaled = rescale(core_d.host(), Rational(integral_scale(core_d)));
    RankSetup s = setup(scaled.graph);
    if (base) {
        auto core_vertex = r.vertex_to_core.at(*base);
        if (!core_vertex) throw InvalidArgument("base point must be a vertex of the core");
        s.q = *core_vertex;
    }
    ChipConfiguration reduced = dhar_reduce(s.chips, to_configuration(s.sub, transport(core_d, scaled)), s.q);
    Divisor back = transport_back(from_configuration(s.sub, reduced), scaled, core_d.host());
    return to_curve(back, r);
}

}  // namespace tropical
