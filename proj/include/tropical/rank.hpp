#pragma once

#include "tropical/chip.hpp"
#include "tropical/divisor.hpp"
#include "tropical/function.hpp"
#include "tropical/graph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropical {

/// Which integer points the rank enumeration removes.
enum class CandidatePoints {
    /// Original vertices plus one interior point per loop: the vertex set of
    /// a loopless model, which is rank-determining.
    RankDetermining,
    /// Every integer point of the graph (every vertex of the unit subdivision).
    All,
};

enum class Execution { Parallel, Serial };

struct RankOptions {
    int scale_cap = 4;
    CandidatePoints candidates = CandidatePoints::RankDetermining;
    Execution execution = Execution::Parallel;
};

struct DiscreteRank {
    std::int64_t rank;
    /// First effective E (degree-lexicographic) with D - E not equivalent to
    /// an effective divisor; deg E = rank + 1.
    Divisor witness;
};

struct RankReport {
    std::int64_t rank = -1;
    std::vector<std::int64_t> scales_tested;
    bool stabilized = false;
    /// On the input graph; zero divisor when the rank is -1.
    std::optional<Divisor> witness;
};

/// Chip-firing rank on the unit subdivision of an integral graph without
/// loops of length 1. d must be supported on integer points.
DiscreteRank discrete_rank(const Divisor& d, const RankOptions& options = {});

/// Rank on a finite metric graph with rational lengths and rational support,
/// computed through integer rescalings of the graph.
RankReport metric_rank(const Divisor& d, const RankOptions& options = {});

/// Rank on a tropical curve: retract to the core, then metric_rank.
RankReport tropical_rank(const Divisor& d, const RankOptions& options = {});

struct Equivalence {
    bool equivalent = false;
    /// With d2 = d1 + (f) when equivalent.
    std::optional<RationalFunction> witness;
};

/// Linear equivalence on a tropical curve or metric graph with rational data.
Equivalence linear_equiv(const Divisor& d1, const Divisor& d2);

/// Divisor reduced with respect to `base` (default: the lowest-id vertex of
/// the core), after retraction and rescaling to integer data; returned on the
/// input graph. Equivalent divisors give equal results.
Divisor reduce_divisor(const Divisor& d, std::optional<VertexIndex> base = std::nullopt);

/// Lowest vertex id of g (ties impossible).
VertexIndex base_vertex(const Graph& g);

/// Smallest positive integer s such that rescaling by s makes every length
/// and every offset of d an integer and leaves no loop of length 1.
Integer integral_scale(const Divisor& d);

}  // namespace tropical
