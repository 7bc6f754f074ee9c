#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

Graph empty_graph(std::size_t n);
Graph path(std::size_t n);
Graph cycle(std::size_t n);     // n >= 3
Graph complete(std::size_t n);  // n >= 1
/// K_{1,n-1}: vertex 0 is the centre, n >= 2.
Graph star(std::size_t n);
/// Vertices of h are shifted by |g|; label count is the max of both.
Graph disjoint_union(const Graph& g, const Graph& h);

/// Line graph of K_{4,4} (the 4x4 rook's graph), SRG(16,6,2,2).
Graph rook4x4();
/// Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
Graph shrikhande();

/// Erdos-Renyi G(n, p). Uses geometric skipping, so sparse graphs on many
/// vertices are generated in time proportional to the edge count.
Graph gnp(std::size_t n, double p, std::uint64_t seed);
/// Uniform-ish random d-regular graph via the pairing model with restarts.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

/// The two 6-vertex graphs with degree multiset {{2,2,2,2,3,3}}: a hexagon
/// with one long chord, and two triangles joined by an edge.
std::pair<Graph, Graph> chorded_hexagon_pair();

/// Uniform random double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_double(std::uint64_t bits);

}  // namespace wlgnn
