#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

/// Stable colour-refinement partition. Classes are numbered by the first
/// vertex that belongs to them, so equal vectors mean equal partitions.
/// Only the partition is produced, not colour trees.
struct StablePartition {
  std::vector<std::uint32_t> class_of;
  std::size_t class_count = 0;
};

/// Partition refinement with a splitter worklist that skips the largest part
/// of each split class; O((n + m) log n) up to sorting of touched vertices.
StablePartition colour_refinement_fast(const Graph& g);

/// Cross-graph test on the disjoint union. Valid for colour refinement because
/// it only counts neighbours; not valid for wl^1, which also counts non-neighbours.
bool fast_cr_distinguishes(const Graph& g, const Graph& h);

}  // namespace wlgnn
