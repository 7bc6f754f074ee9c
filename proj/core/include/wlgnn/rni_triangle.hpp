#pragma once

#include <cstddef>

#include "wlgnn/gnn.hpp"

namespace wlgnn {

struct RniTriangleOptions {
  /// Random values are quantised to ids 1..levels.
  std::size_t levels = 4096;
  /// Power of two; per-digit counts must stay below it (max degree^2).
  unsigned long base = 64;
  std::size_t labels = 0;
};

/// Three-layer RNI model computing triangle membership with high probability.
/// Layer 1 turns the random coordinate into an identifier e = m^(-id); layer 2
/// forms (e, S) with S the sum over neighbours; layer 3 outputs 1 iff some
/// digit is set in both S(v) and the sum of S over v's neighbours, i.e. two
/// neighbours of v are adjacent. Id collisions are the only error source.
GnnModel build_rni_triangle_model(const RniTriangleOptions& opt = {});

}  // namespace wlgnn
