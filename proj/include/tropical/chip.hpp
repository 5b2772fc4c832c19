#pragma once

#include "tropical/graph.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace tropical {

/// Loopless multigraph in compressed adjacency form, the board for chip
/// firing. Parallel edges appear as repeated neighbours.
class ChipGraph {
public:
    explicit ChipGraph(const Graph& g);

    std::size_t vertex_count() const { return offsets_.size() - 1; }
    std::span<const VertexIndex> neighbors(VertexIndex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::int64_t degree(VertexIndex v) const { return static_cast<std::int64_t>(offsets_[v + 1] - offsets_[v]); }

private:
    std::vector<std::size_t> offsets_;
    std::vector<VertexIndex> adjacency_;
};

/// Integer number of chips on each vertex of a ChipGraph.
struct ChipConfiguration {
    std::vector<std::int64_t> chips;

    std::int64_t degree() const;
    friend auto operator<=>(const ChipConfiguration&, const ChipConfiguration&) = default;
};

/// q-reduced representative together with the firing script that reaches it:
/// reduced = start + div(script), where div(1_S) moves one chip from every
/// vertex of S across each edge leaving S.
struct Reduction {
    ChipConfiguration reduced;
    std::vector<std::int64_t> script;
};

/// Fast reduction: layered borrowing to make every vertex but q nonnegative,
/// then Dhar burning with bulk firing along chip-free chains of valence-two
/// vertices.
Reduction dhar_reduce_with_script(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q);
ChipConfiguration dhar_reduce(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q);

/// Plain reference version: same borrowing phase, then one Dhar firing per
/// round. Used to check the fast path.
Reduction dhar_reduce_reference(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q);

/// Nonnegative off q and every nonempty set avoiding q has a vertex with
/// fewer chips than edges leaving the set (checked with one burn).
bool is_reduced(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q);

/// The configuration is equivalent to an effective one iff its q-reduced
/// form has a nonnegative value at q.
bool wins_effective(const ChipGraph& g, const ChipConfiguration& c, VertexIndex q);

/// The configuration after firing each vertex script[v] times.
ChipConfiguration apply_script(const ChipGraph& g, const ChipConfiguration& c, const std::vector<std::int64_t>& script);

}  // namespace tropical
