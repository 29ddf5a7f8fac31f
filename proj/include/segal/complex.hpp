#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "segal/verdict.hpp"

namespace segal {

// A finite graded family of cells with unary operators between grades.
// Truncated simplicial sets (grades = levels) and truncated bisimplicial sets
// (grades = bidegrees) both flatten to this, which lets one constraint-
// propagation engine serve map enumeration and isomorphism search for both.
struct Complex {
    struct Op {
        int from = 0;
        int to = 0;
        std::vector<std::uint32_t> tab;  // cell of `from` -> cell of `to`
    };

    std::vector<std::uint32_t> size;  // cells per grade
    std::vector<Op> ops;
    // total degree per grade; steers the assignment order of map searches
    std::vector<int> weight;

    int num_grades() const { return int(size.size()); }
    std::size_t total_cells() const;

    // ops_from[g] / ops_to[g]: indices of ops by endpoint (built by freeze()).
    std::vector<std::vector<int>> ops_from;
    std::vector<std::vector<int>> ops_to;
    // inv[op][target cell]: preimages (built on demand by freeze()).
    std::vector<std::vector<std::vector<std::uint32_t>>> inv;

    void freeze();  // build indices; call once after filling size/ops
};

// A graded cell map, assignment[grade][cell] -> target cell.
using GradedMap = std::vector<std::vector<std::uint32_t>>;

struct MapSearch {
    const Complex* domain = nullptr;
    const Complex* codomain = nullptr;
    bool bijective = false;
    // Assign high-degree cells first (their faces then follow by
    // propagation).  The right choice for map enumeration; isomorphism
    // searches do better bottom-up where candidate sets start small.
    bool top_down = true;
    // per grade, per cell: forced image or -1
    std::vector<std::vector<std::int64_t>> seed;
    std::size_t max_solutions = 1000000;
    std::size_t max_nodes = 30000000;
};

struct MapSearchResult {
    std::vector<GradedMap> solutions;
    bool complete = true;  // false if a bound stopped the search
    std::size_t nodes = 0;
};

MapSearchResult enumerate_complex_maps(const MapSearch& problem);

// First isomorphism between two complexes, if any (bijective map search).
std::optional<GradedMap> find_complex_iso(const Complex& a, const Complex& b,
                                          std::size_t max_nodes = 30000000);

}  // namespace segal
