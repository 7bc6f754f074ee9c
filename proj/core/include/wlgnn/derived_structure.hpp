#pragma once

#include <cstddef>

#include "wlgnn/graph.hpp"
#include "wlgnn/wl.hpp"

namespace wlgnn {

/// Largest atomic-type width for which one unary relation per type is built.
inline constexpr std::size_t kMaxDerivedTypeBits = 16;

/// A_G for arity k: universe V(G)^k (indexed as in Colouring), relation E_i
/// (i = 0..k-1) holding the pairs of tuples that differ exactly at position i,
/// and one unary relation per atomic type theta in {0,1}^w, w = atp width.
/// Type theta has label index sum_j theta_j * 2^(w-1-j) (first bit most
/// significant). Throws BudgetExceeded when n^k exceeds the tuple budget or
/// w exceeds kMaxDerivedTypeBits.
BinaryStructure derived_structure(const Graph& g, std::size_t k,
                                  std::size_t tuple_budget = default_tuple_budget());

}  // namespace wlgnn
