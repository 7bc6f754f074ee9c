#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

/// Root 0 joined to hubs 1..h; hub i carries leaves[i] pendant vertices with
/// label 0 (P_1). One label in total.
Graph hub_tree(const std::vector<std::size_t>& leaves);

/// Graphs for checking compiled formulas against the evaluator: hub trees
/// around the counting threshold 11 (12 labelled leaves on one and on two
/// hubs among them), small named families, and random labelled graphs,
/// some with high-degree hubs. All have exactly one label. Deterministic.
std::vector<Graph> certification_corpus(std::size_t count = 50, std::uint64_t seed = 2);

}  // namespace wlgnn
