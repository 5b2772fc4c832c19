#include "tropical/chip.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>

namespace tropical {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("chip count overflow");
    return out;
}

void check_input(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    if (c.chips.size() != g.vertex_count()) throw InvalidArgument("configuration size does not match the graph");
    if (q >= g.vertex_count()) throw InvalidArgument("base vertex out of range");
}

std::vector<std::size_t> bfs_layers(const ChipGraph& g, VertexIndex q) {
    std::vector<std::size_t> dist(g.vertex_count(), SIZE_MAX);
    std::deque<VertexIndex> queue{q};
    dist[q] = 0;
    while (!queue.empty()) {
        VertexIndex v = queue.front();
        queue.pop_front();
        for (VertexIndex w : g.neighbors(v)) {
            if (dist[w] == SIZE_MAX) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Makes every vertex but q nonnegative. For each BFS layer k from the
// outside in, the vertices closer to q fire just enough times to cover the
// worst debt in layer k; only edges between layers k-1 and k carry chips.
void borrow_phase(const ChipGraph& g, std::vector<std::int64_t>& chips, std::vector<std::int64_t>& script,
                  VertexIndex q) {
    auto dist = bfs_layers(g, q);
    std::size_t depth = 0;
    for (auto d : dist) depth = std::max(depth, d);
    std::vector<std::vector<VertexIndex>> layers(depth + 1);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) layers[dist[v]].push_back(v);

    std::vector<std::int64_t> fired_inside(depth + 1, 0);  // firings of {dist <= k}
    for (std::size_t k = depth; k >= 1; --k) {
        std::int64_t need = 0;
        for (VertexIndex z : layers[k]) need = std::max(need, -chips[z]);
        if (need == 0) continue;
        for (VertexIndex z : layers[k]) {
            for (VertexIndex y : g.neighbors(z)) {
                if (dist[y] + 1 != k) continue;
                chips[z] = checked_add(chips[z], need);
                chips[y] = checked_add(chips[y], -need);
            }
        }
        fired_inside[k - 1] = need;
    }
    // A vertex at distance d fired in every round with k - 1 >= d.
    std::vector<std::int64_t> suffix(depth + 2, 0);
    for (std::size_t k = depth + 1; k-- > 0;) suffix[k] = checked_add(suffix[k + 1], fired_inside[k]);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) script[v] = checked_add(script[v], suffix[dist[v]]);
}

// Dhar's burning from q. Returns the number of burnt vertices.
std::size_t burn(const ChipGraph& g, const std::vector<std::int64_t>& chips, VertexIndex q, std::vector<char>& burnt,
                 std::vector<std::int64_t>& hits) {
    std::fill(burnt.begin(), burnt.end(), 0);
    std::fill(hits.begin(), hits.end(), 0);
    std::vector<VertexIndex> stack{q};
    burnt[q] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        VertexIndex v = stack.back();
        stack.pop_back();
        for (VertexIndex w : g.neighbors(v)) {
            if (burnt[w]) continue;
            if (++hits[w] > chips[w]) {
                burnt[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count;
}

}  // namespace

ChipGraph::ChipGraph(const Graph& g) {
    offsets_.assign(g.vertex_count() + 1, 0);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        for (const auto& inc : g.incidences(v)) {
            if (g.edge(inc.edge).is_loop()) throw InvalidArgument("chip firing needs a loopless graph");
        }
        offsets_[v + 1] = offsets_[v] + g.incidences(v).size();
    }
    adjacency_.resize(offsets_.back());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        std::size_t i = offsets_[v];
        for (const auto& inc : g.incidences(v)) {
            const auto& edge = g.edge(inc.edge);
            adjacency_[i++] = inc.at_from ? edge.to : edge.from;
        }
    }
}

std::int64_t ChipConfiguration::degree() const {
    std::int64_t sum = 0;
    for (auto c : chips) sum = checked_add(sum, c);
    return sum;
}

Reduction dhar_reduce_with_script(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    check_input(g, c, q);
    const std::size_t n = g.vertex_count();
    std::vector<std::int64_t> chips = c.chips;
    std::vector<std::int64_t> script(n, 0);
    borrow_phase(g, chips, script, q);

    std::vector<char> burnt(n);
    std::vector<std::int64_t> hits(n);

    // A chain vertex passes a travelling chip straight on: burnt, chip-free,
    // valence two with distinct neighbours, not q.
    auto chain_next = [&](VertexIndex prev, VertexIndex cur) -> std::optional<VertexIndex> {
        if (cur == q || !burnt[cur] || chips[cur] != 0 || g.degree(cur) != 2) return std::nullopt;
        auto nb = g.neighbors(cur);
        if (nb[0] == nb[1]) return std::nullopt;
        VertexIndex next = nb[0] == prev ? nb[1] : nb[0];
        if (!burnt[next]) return std::nullopt;
        return next;
    };

    struct Emission {
        VertexIndex source;
        VertexIndex first;
    };
    std::vector<Emission> emissions;
    std::vector<VertexIndex> landings;
    while (burn(g, chips, q, burnt, hits) < n) {
        emissions.clear();
        for (VertexIndex v = 0; v < n; ++v) {
            if (burnt[v]) continue;
            for (VertexIndex x : g.neighbors(v)) {
                if (burnt[x]) emissions.push_back({v, x});
            }
        }
        // Number of unit firings before some chip lands on a non-chain vertex.
        std::int64_t step = INT64_MAX;
        for (const auto& em : emissions) {
            VertexIndex prev = em.source;
            VertexIndex cur = em.first;
            std::int64_t len = 1;
            while (len < step && len < static_cast<std::int64_t>(n)) {
                auto next = chain_next(prev, cur);
                if (!next) break;
                prev = cur;
                cur = *next;
                ++len;
            }
            step = std::min(step, len);
        }
        for (VertexIndex v = 0; v < n; ++v) {
            if (!burnt[v]) script[v] = checked_add(script[v], step);
        }
        landings.clear();
        for (const auto& em : emissions) {
            VertexIndex prev = em.source;
            VertexIndex cur = em.first;
            for (std::int64_t m = 1; m < step; ++m) {
                script[cur] = checked_add(script[cur], step - m);
                VertexIndex next = *chain_next(prev, cur);
                prev = cur;
                cur = next;
            }
            landings.push_back(cur);
        }
        for (std::size_t i = 0; i < emissions.size(); ++i) {
            chips[emissions[i].source] -= 1;
            chips[landings[i]] += 1;
        }
    }
    return Reduction{ChipConfiguration{std::move(chips)}, std::move(script)};
}

ChipConfiguration dhar_reduce(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    return dhar_reduce_with_script(g, c, q).reduced;
}

Reduction dhar_reduce_reference(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    check_input(g, c, q);
    const std::size_t n = g.vertex_count();
    std::vector<std::int64_t> chips = c.chips;
    std::vector<std::int64_t> script(n, 0);
    borrow_phase(g, chips, script, q);
    std::vector<char> burnt(n);
    std::vector<std::int64_t> hits(n);
    while (burn(g, chips, q, burnt, hits) < n) {
        for (VertexIndex v = 0; v < n; ++v) {
            if (burnt[v]) continue;
            script[v] = checked_add(script[v], 1);
            for (VertexIndex x : g.neighbors(v)) {
                if (!burnt[x]) continue;
                chips[v] -= 1;
                chips[x] += 1;
            }
        }
    }
    return Reduction{ChipConfiguration{std::move(chips)}, std::move(script)};
}

bool is_reduced(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    check_input(g, c, q);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        if (v != q && c.chips[v] < 0) return false;
    }
    std::vector<char> burnt(g.vertex_count());
    std::vector<std::int64_t> hits(g.vertex_count());
    return burn(g, c.chips, q, burnt, hits) == g.vertex_count();
}

bool wins_effective(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q) {
    check_input(g, c, q);
    if (c.degree() < 0) return false;
    return dhar_reduce(g, c, q).chips[q] >= 0;
}

ChipConfiguration apply_script(const ChipGraph& g, const ChipConfiguration& c, const std::vector<std::int64_t>& script) {
    if (script.size() != g.vertex_count() || c.chips.size() != g.vertex_count()) {
        throw InvalidArgument("script size does not match the graph");
    }
    ChipConfiguration out = c;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        for (VertexIndex w : g.neighbors(v)) {
            out.chips[v] = checked_add(out.chips[v], checked_add(script[w], -script[v]));
        }
    }
    return out;
}

}  // namespace tropical
