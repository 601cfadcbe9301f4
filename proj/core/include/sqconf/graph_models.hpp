#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sqconf/cube_complex.hpp"

namespace sqconf {

// Finite multigraph; loops and parallel edges are allowed.
struct Graph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;

    bool operator==(const Graph&) const = default;
};

Graph cycle_graph(int n);
Graph path_graph(int vertices);
Graph star_graph(int leaves);

bool is_connected(const Graph& g);
std::vector<int> valences(const Graph& g);  // a loop counts twice

// 0-cells are the vertices (same ids), 1-cells the edges in order.
CubeComplex graph_complex(const Graph& g);

// Every edge becomes a path of k edges; new vertices are appended edge by edge.
Graph subdivide(const Graph& g, int k);

struct AbramsResult {
    bool ok = true;
    std::string reason;         // empty when ok
    std::vector<int> witness;   // vertex sequence of the violating path or loop
};

AbramsResult abrams_check(const Graph& g, int m);

// Shortest cycle as a closed vertex sequence (first vertex repeated at the end);
// empty for forests.
std::vector<int> shortest_cycle(const Graph& g);

// Edge-list text: one "u v" pair per line, '#' starts a comment. The vertex
// count is one more than the largest id mentioned.
Graph read_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

}  // namespace sqconf
