#pragma once

#include "tropical/divisor.hpp"
#include "tropical/graph.hpp"

#include <cstdint>
#include <vector>

namespace tropical {

struct Breakpoint {
    Rational offset;
    Rational value;

    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Continuous piecewise-linear function with integer slopes, stored per edge
/// as breakpoints measured from the edge's first endpoint.
///
/// On a finite edge the breakpoints run from offset 0 to the edge length. On
/// an infinite edge they run from 0 to the last finite breakpoint, after which
/// the function continues with slope `end_slope` towards the unbounded end;
/// the value at the end is +/-infinity unless that slope is zero. Redundant
/// collinear breakpoints are dropped on construction, so equality is exact
/// structural equality.
class RationalFunction {
public:
    struct EdgePiece {
        std::vector<Breakpoint> breakpoints;
        std::int64_t end_slope = 0;

        friend bool operator==(const EdgePiece&, const EdgePiece&) = default;
    };

    /// `isolated_value` is only used on a single-vertex graph without edges.
    RationalFunction(GraphPtr host, std::vector<EdgePiece> pieces, Rational isolated_value = 0);

    static RationalFunction constant(GraphPtr host, const Rational& value);

    const GraphPtr& host() const { return host_; }
    const MetricGraph& graph() const { return *host_; }
    const EdgePiece& piece(EdgeIndex e) const { return pieces_.at(e); }
    const std::vector<EdgePiece>& pieces() const { return pieces_; }
    const Rational& isolated_value() const { return isolated_value_; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b);

private:
    GraphPtr host_;
    std::vector<EdgePiece> pieces_;
    Rational isolated_value_;
};

Extended evaluate(const RationalFunction& f, const GraphPoint& p);

/// Sum of the outgoing slopes at p. At an unbounded end this is minus the
/// slope of f next to the end.
std::int64_t order(const RationalFunction& f, const GraphPoint& p);

/// Sum of order(f, P) * P over the finitely many points with nonzero order.
Divisor principal_divisor(const RationalFunction& f);

/// Pointwise sum. Throws when one summand is +infinity and the other
/// -infinity at the same unbounded end.
RationalFunction add(const RationalFunction& f, const RationalFunction& g);
RationalFunction add_constant(const RationalFunction& f, const Rational& c);
RationalFunction scale(const RationalFunction& f, std::int64_t k);

/// Every segment slope, including slopes towards unbounded ends.
std::vector<std::int64_t> all_slopes(const RationalFunction& f);
/// Number of poles counted with multiplicity.
std::int64_t pole_count(const RationalFunction& f);

/// For a point on an unbounded edge: the function that is zero on every other
/// edge and equals min(dist(p, core), dist(x, core)) on the edge of p, so its
/// divisor is (attachment vertex) - p. The zero function for core points.
RationalFunction end_ramp(const GraphPtr& g, const GraphPoint& p);

struct RetractedDivisor {
    Divisor divisor;  // supported on the core; equals d + (function)
    RationalFunction function;
};

/// Pushes every point on an unbounded edge to its attachment vertex using a
/// weighted sum of end ramps. Degree and effectivity are preserved.
RetractedDivisor retract_divisor(const Divisor& d);

/// The move towards an integer point: with d the smallest distance from a
/// zero to the integer points, realised between some zero and `target`, and
/// C the component of the graph minus the zeros containing `target`,
/// returns x -> -min(d, dist(x, zeros)) on C and 0 elsewhere. All slopes are
/// in {-1, 0, 1}, and the divisor plus zeros minus target is effective.
RationalFunction snap_ramp(const GraphPtr& g, const std::vector<GraphPoint>& zeros, const GraphPoint& target);

/// Given f with (f) + d effective on an integral graph and an integral
/// divisor d, returns f' with (f') + d effective and supported on integer
/// points, by repeatedly moving a closest non-integral zero with snap_ramp.
RationalFunction snap_to_integer_points(const Divisor& d, const RationalFunction& f);

/// (N + p)^alpha with N the maximal valence and alpha the number of edges:
/// no rational function with at most p poles on any metrization of g has a
/// steeper slope.
Integer slope_bound(const Graph& g, int poles);

/// Offsets and values both scale with the graph.
RationalFunction transport(const RationalFunction& f, const Rescaled& r);
RationalFunction transport_back(const RationalFunction& f, const Rescaled& r, const GraphPtr& original);

/// Extends a core function to the curve, constant along each unbounded edge.
RationalFunction to_curve(const RationalFunction& f, const CoreRetraction& r);

}  // namespace tropical
