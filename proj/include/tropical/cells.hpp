#pragma once

#include "tropical/divisor.hpp"
#include "tropical/function.hpp"
#include "tropical/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropical {

/// Where one of the points P_1..P_n sits: on a vertex or inside an edge.
struct Location {
    bool is_vertex;
    std::size_t index;

    friend auto operator<=>(const Location&, const Location&) = default;
};

/// Discrete data of a cell of S(D): the location of each P_i and the slope of
/// f on every edge leaving its `from` vertex.
struct CellSignature {
    std::vector<Location> placement;
    std::vector<std::int64_t> slopes;

    friend auto operator<=>(const CellSignature&, const CellSignature&) = default;
};

struct Cell {
    CellSignature signature;
    /// Free continuous parameters: edge offsets of the P_i plus the additive
    /// constant, minus the rank of the compatibility equations.
    int dimension = 0;
    bool feasible = false;
    /// A point of the relatively open cell: offsets of the edge-placed P_i
    /// (nullopt for vertex-placed ones) and the value of f at every vertex.
    std::vector<std::optional<Rational>> sample_offsets;
    std::vector<Rational> sample_values;
    /// Equal for signatures that differ by a permutation of the P_i.
    std::string orbit;
};

struct CellCaps {
    std::size_t max_edges = 4;
    std::int64_t max_degree = 3;
    std::size_t max_cells = 100000;
};

struct CellReport {
    std::vector<Cell> cells;  // feasible cells in signature order
    bool truncated = false;
    std::map<int, std::size_t> dimension_counts;
    /// The p in the slope bound: positive part of deg D, at least 1.
    int poles = 1;
    Integer slope_bound;
};

/// All feasible cells of S(D) on a finite metric graph. Inputs beyond the caps
/// give an empty report with `truncated` set.
CellReport enumerate_cells(const Divisor& d, const CellCaps& caps = {});

int max_cell_dimension(const CellReport& report);

/// The rational function of the cell's sample point; (f) + D equals the
/// sum of the sampled P_i.
RationalFunction cell_function(const Divisor& d, const Cell& cell);

/// The sampled P_1..P_n as a divisor.
Divisor cell_points(const Divisor& d, const Cell& cell);

std::string location_label(const MetricGraph& g, const Location& loc);

}  // namespace tropical
