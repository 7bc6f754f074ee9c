#include "wlgnn/random_graphs.hpp"

#include <numeric>

#include "wlgnn/generators.hpp"

namespace wlgnn {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + rng();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<std::size_t>(x % span);
}

bool coin(Rng& rng, double p) { return unit_double(rng()) < p; }

std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, 0, i - 1)]);
  return perm;
}

std::vector<Vertex> inverse_permutation(const std::vector<Vertex>& perm) {
  std::vector<Vertex> inv(perm.size());
  for (std::size_t v = 0; v < perm.size(); ++v) inv[perm[v]] = static_cast<Vertex>(v);
  return inv;
}

Graph random_labelled_graph(std::size_t n, double p, std::size_t labels, Rng& rng) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng, p)) edges.emplace_back(u, v);
  std::vector<LabelEntry> entries;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t l = 0; l < labels; ++l)
      if (coin(rng, 0.5)) entries.push_back({v, l});
  return Graph(n, labels, std::move(edges), entries);
}

Graph random_suite_graph(std::size_t n_min, std::size_t n_max, std::size_t labels, Rng& rng) {
  const std::size_t n = uniform_index(rng, n_min, n_max);
  if (n >= 3 && coin(rng, 0.25)) {
    std::size_t d = uniform_index(rng, 1, n - 1);
    if ((n * d) % 2 != 0) --d;
    Graph g = random_regular(n, d, rng());
    if (labels == 0) return g;
    std::vector<LabelEntry> entries;
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t l = 0; l < labels; ++l)
        if (coin(rng, 0.5)) entries.push_back({v, l});
    return g.relabelled(labels, entries);
  }
  static constexpr double kDensities[3] = {0.2, 0.5, 0.8};
  return random_labelled_graph(n, kDensities[uniform_index(rng, 0, 2)], labels, rng);
}

}  // namespace wlgnn
