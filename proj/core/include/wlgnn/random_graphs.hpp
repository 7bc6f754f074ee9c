#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "wlgnn/graph.hpp"

namespace wlgnn {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], independent of the standard library's
/// distribution implementation so seeds reproduce across toolchains.
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);
bool coin(Rng& rng, double p);

/// perm[v] is the image of v.
std::vector<Vertex> random_permutation(std::size_t n, Rng& rng);
std::vector<Vertex> inverse_permutation(const std::vector<Vertex>& perm);

/// G(n, p) with each vertex carrying each of `labels` labels with probability 1/2.
Graph random_labelled_graph(std::size_t n, double p, std::size_t labels, Rng& rng);

/// Property-suite distribution: order uniform in [n_min, n_max]; with
/// probability 1/4 a random regular graph, otherwise G(n, p) with
/// p drawn from {0.2, 0.5, 0.8}. Labels as in random_labelled_graph.
Graph random_suite_graph(std::size_t n_min, std::size_t n_max, std::size_t labels, Rng& rng);

}  // namespace wlgnn
