#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

class OracleSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IsoOptions {
  /// Adds joint colour refinement classes and per-vertex triangle and K4
  /// counts to the candidate filter, which lifts the size cap to 16.
  bool invariant_pruning = false;
};

struct IsoResult {
  bool isomorphic = false;
  /// witness[v] is the image of v in the second graph.
  std::optional<std::vector<Vertex>> witness;
};

/// Exact isomorphism test by backtracking over label- and degree-compatible
/// candidates with incremental adjacency checks. Throws OracleSizeError above
/// 8 vertices (16 with invariant pruning).
IsoResult oracle_isomorphic(const Graph& g, const Graph& h, const IsoOptions& opt = {});

/// Automorphism orbits for n <= 8, as orbit ids numbered by first vertex.
std::vector<std::uint32_t> automorphism_orbits(const Graph& g);

}  // namespace wlgnn
