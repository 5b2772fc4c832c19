#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles use only the plain Graph/MetricGraph accessors and exact
// rationals, never the chip-firing, rank or function code they check.

#include "tropical/chip.hpp"
#include "tropical/divisor.hpp"
#include "tropical/function.hpp"
#include "tropical/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fixtures {

using namespace tropical;

/// Vertices P, Q; loops a at P and b at Q of length 2, bridge e = P->Q of
/// length 1.
GraphPtr dumbbell(const std::string& loop = "2", const std::string& bridge = "1");
GraphPtr unit_loop();
GraphPtr segment(const std::string& length = "1");
/// n vertices c0..c(n-1) joined in a cycle by edges of the given length.
GraphPtr cycle(int n, const std::string& length = "1");
/// Loop of length 1 at Q with one infinite edge r0 from Q to the end x0.
GraphPtr loop_with_end();

GraphPoint vertex(const MetricGraph& g, const std::string& id);
GraphPoint point(const MetricGraph& g, const std::string& edge, const std::string& offset);
Divisor divisor(const GraphPtr& g, const std::vector<std::pair<GraphPoint, std::int64_t>>& terms);

/// Loopless graph on n vertices with the given vertex pairs as edges.
Graph simple_graph(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace fixtures

namespace oracle {

using namespace tropical;

/// Shortest path between two points of a finite metric graph: all-pairs
/// vertex distances by Floyd-Warshall, then the four endpoint routes plus
/// the direct route inside a shared edge.
Rational distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q);

/// Decides chip-firing equivalence by solving the reduced Laplacian system
/// exactly: a ~ b iff b - a = L z has an integral solution z.
class Lattice {
public:
    explicit Lattice(const Graph& g);

    std::size_t size() const { return n_; }
    int valence(std::size_t v) const { return static_cast<int>(laplacian_[v][v]); }
    std::int64_t edges_between(std::size_t v, std::size_t w) const { return -laplacian_[v][w]; }
    bool equivalent(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const;
    /// Configuration after firing every vertex script[v] times.
    std::vector<std::int64_t> fire(const std::vector<std::int64_t>& c, const std::vector<std::int64_t>& script) const;

private:
    std::size_t n_;
    std::vector<std::vector<std::int64_t>> laplacian_;
    std::vector<std::vector<Rational>> inverse_;  // reduced Laplacian at vertex 0
};

/// q-reduced by definition: nonnegative off q and every nonempty S avoiding q
/// has a vertex with fewer chips than edges leaving S. Exponential in |V|.
bool reduced_by_subsets(const Lattice& l, const std::vector<std::int64_t>& c, std::size_t q);

/// Every q-reduced configuration equivalent to c, by scanning the box that
/// contains all of them (0 <= c(v) < val(v) off q).
std::vector<std::vector<std::int64_t>> reduced_forms(const Lattice& l, const std::vector<std::int64_t>& c,
                                                      std::size_t q);

/// Breadth-first search over single-vertex firings and borrowings with every
/// chip count kept in [-bound, bound]; returns the reduced configurations
/// met on the way.
std::vector<std::vector<std::int64_t>> reduced_by_firing(const Lattice& l, const std::vector<std::int64_t>& c,
                                                          std::size_t q, std::int64_t bound);

/// c is equivalent to some effective configuration of the same degree,
/// found by listing all of them.
bool equivalent_to_effective(const Lattice& l, const std::vector<std::int64_t>& c);

/// Rank by definition over every vertex of the graph.
std::int64_t rank(const Lattice& l, const std::vector<std::int64_t>& c);

/// Edge sets of the simple cycles (loops included), each sorted.
std::vector<std::vector<EdgeIndex>> simple_cycles(const Graph& g);

/// Outgoing slope sum at every breakpoint, vertex and end, straight from the
/// stored breakpoints.
Divisor principal_divisor(const RationalFunction& f);

}  // namespace oracle
