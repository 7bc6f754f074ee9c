#pragma once

#include <cstddef>

#include "wlgnn/gnn.hpp"

namespace wlgnn {

struct WlGnnOptions {
  /// Distinct feature values a single round may take across every graph the
  /// model is run on. Exceeding it raises ModelError.
  std::size_t round_capacity = 4096;
};

/// Recurrent rational-mode GNN whose round-t feature partition equals the
/// colour refinement partition at round t on every graph of order <= n.
///
/// Initial colours are encoded as m^(-k0-i), i the label vector read as an
/// integer plus one; each round computes z = x + 2*sum(neighbours), whose
/// base-m digits hold the own value (odd) and neighbour counts, and maps z
/// injectively to m^(-k_t-j) with j a per-round index grown on demand.
/// m is the least power of two >= 2n. Iterates |G| times.
GnnModel build_wl_gnn(std::size_t n, std::size_t labels, const WlGnnOptions& opt = {});

/// Same with a global readout channel: z = x + 2*nbr + 2n*all, with
/// m >= 2n^2 + 2n so the three counts stay separable in each digit.
/// The round-t partition, taken jointly over several graphs, refines wl^1_t.
GnnModel build_wl1_gnn(std::size_t n, std::size_t labels, const WlGnnOptions& opt = {});

/// k-GNN over A_G (input: one-hot atomic types) with message matrices
/// M_i = 2n^(i-1) and m >= 2n^k. Its round-t partition of V(G)^k equals the
/// oblivious k-WL partition at round t. Runs `rounds` iterations.
GnnModel build_kgnn_wl(std::size_t n, std::size_t k, std::size_t labels, std::size_t rounds,
                       const WlGnnOptions& opt = {});

/// Smallest power of two that is >= x (x >= 1).
unsigned long next_pow2(unsigned long x);

}  // namespace wlgnn
