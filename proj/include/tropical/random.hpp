#pragma once

#include "tropical/divisor.hpp"
#include "tropical/function.hpp"
#include "tropical/graph.hpp"

#include <cstdint>
#include <random>

namespace tropical {

/// Seeded generator with platform-independent integer draws.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    /// Independent stream for (seed, index).
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    /// Uniform in [lo, hi]; requires lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);
    bool coin(std::int64_t numerator, std::int64_t denominator);

private:
    std::mt19937_64 engine_;
};

struct RandomGraphSpec {
    int genus = 1;
    int edges = 3;            // finite edges; at least genus
    int max_denominator = 4;  // 1 gives integer lengths
    int max_length = 2;       // lengths p/q with p <= max_length * q
    int ends = 0;
};

/// Random spanning tree plus genus extra edges (loops and parallel edges
/// allowed), then `ends` infinite edges attached at random vertices.
GraphPtr random_graph(Rng& rng, const RandomGraphSpec& spec);

/// A random point: vertex, edge interior or, on curves, an infinite edge or
/// an end. Interior offsets are length * a / b with b <= max_denominator;
/// with max_denominator 1 only integer points are drawn.
GraphPoint random_point(Rng& rng, const MetricGraph& g, int max_denominator, bool allow_unbounded = true);

/// Degree `degree` divisor on up to `support` points; coefficients in
/// [-2, 3] except the last, which fixes the degree.
Divisor random_divisor(Rng& rng, const GraphPtr& g, std::int64_t degree, int support, int max_denominator,
                       bool allow_unbounded = true);
Divisor random_effective_divisor(Rng& rng, const GraphPtr& g, std::int64_t degree, int max_denominator,
                                 bool allow_unbounded = true);

/// Random rational function: random breakpoints and slopes in
/// [-max_slope, max_slope] on a spanning tree, closed continuously on the
/// remaining edges with two-slope segments.
RationalFunction random_function(Rng& rng, const GraphPtr& g, int max_slope);

}  // namespace tropical
