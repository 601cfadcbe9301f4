#pragma once

// Test-only reference implementations. Nothing here calls the library code
// paths it is meant to check: DF enumeration, boundaries and ranks are
// rebuilt from raw cell/face data, and distances come from a grid search.

#include <cstdint>
#include <map>
#include <vector>

#include "sqconf/cube_complex.hpp"

namespace oracle {

using Betti = std::vector<std::size_t>;

// Sparse integer chain complex: cols[k][j] lists (row, coefficient) of the
// boundary of the j-th k-cell.
struct Chains {
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::map<std::size_t, long long>>> cols;

    long long euler() const;
};

// Chains of an arbitrary cube complex, read off its facet lists.
Chains chains_of(const sqconf::CubeComplex& K);

// DF_m(K) by exhaustive enumeration of m-tuples with disjoint closures;
// closures are recomputed from the facet lists.
Chains brute_force_df(const sqconf::CubeComplex& K, int m);

std::size_t rank_mod(const std::vector<std::map<std::size_t, long long>>& cols, std::uint32_t p);
Betti betti_mod(const Chains& c, std::uint32_t p);

// d o d == 0 over the integers.
bool boundary_squares_to_zero(const Chains& c);

// Chebyshev distances on an eps = 1/8 grid. States are (node, horizontal
// steps used); the search minimizes vertical steps in each state, so the
// distance is min_h max(h, v(h)).
class GridSurface {
public:
    enum class Kind { disk, closed, bounded };
    GridSurface(Kind kind, int g, int n);

    static constexpr int E = 8;
    int node(int x, int y) const;               // chart coordinates in 1/8 units; -1 if removed
    // Distances in 1/8 units from `source` to every node; values above the
    // budget 8n are reported as -1.
    std::vector<int> distances_from(int source) const;

private:
    Kind kind_;
    int g_, n_, W_, H_, P_;
    std::vector<int> id_;                       // chart slot -> node
    std::vector<std::vector<std::pair<int, bool>>> adj_;  // (neighbour, horizontal?)

    bool inside_chart(int x, int y) const;
    std::pair<int, int> canonical(int x, int y) const;
    bool removed(int x, int y) const;
    int slot(int x, int y) const { return y * (W_ + 1) + x; }
};

}  // namespace oracle
