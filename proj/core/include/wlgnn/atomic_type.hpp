#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

/// Bit-vector describing the induced substructure on a tuple.
///
/// Graph layout (2*C(k,2) + k*l bits): for each 1 <= i < j <= k in
/// lexicographic order the pair (v_i = v_j, v_i v_j in E), followed by the l
/// label bits of v_1, then of v_2, and so on.
///
/// Structure layout (m*k^2 + C(k,2) + k*l bits) for m binary relations: for
/// each relation r and each ordered position pair (i, j), i and j in 1..k in
/// row-major order, whether (v_i, v_j) is in E_r; then the C(k,2) equality
/// bits; then the label bits per position. The k^2 block per relation covers
/// diagonal pairs, so a 1-tuple's type is exactly col(A, v).
struct AtomicType {
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  std::string to_string() const;

  friend auto operator<=>(const AtomicType&, const AtomicType&) = default;
  friend bool operator==(const AtomicType&, const AtomicType&) = default;
};

std::size_t atomic_type_width(const Graph& g, std::size_t k);
std::size_t atomic_type_width(const BinaryStructure& s, std::size_t k);

/// atp_k(G, v). Throws GraphError on out-of-range vertices.
AtomicType atomic_type(const Graph& g, std::span<const Vertex> tuple);
AtomicType atomic_type(const BinaryStructure& s, std::span<const Vertex> tuple);

}  // namespace wlgnn
