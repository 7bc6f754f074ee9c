#include "wlgnn/corpora.hpp"

#include "wlgnn/generators.hpp"
#include "wlgnn/random_graphs.hpp"

namespace wlgnn {
namespace {

Graph with_random_labels(const Graph& g, Rng& rng, double p) {
  std::vector<LabelEntry> labels;
  for (Vertex v = 0; v < g.order(); ++v)
    if (coin(rng, p)) labels.push_back({v, 0});
  return g.relabelled(1, labels);
}

}  // namespace

Graph hub_tree(const std::vector<std::size_t>& leaves) {
  std::size_t n = 1 + leaves.size();
  for (auto c : leaves) n += c;
  std::vector<Edge> e;
  std::vector<LabelEntry> labels;
  Vertex next = static_cast<Vertex>(1 + leaves.size());
  for (std::size_t h = 0; h < leaves.size(); ++h) {
    const auto hub = static_cast<Vertex>(h + 1);
    e.emplace_back(0, hub);
    for (std::size_t i = 0; i < leaves[h]; ++i) {
      e.emplace_back(hub, next);
      labels.push_back({next++, 0});
    }
  }
  return Graph(n, 1, std::move(e), labels);
}

std::vector<Graph> certification_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<Graph> out{
      hub_tree({12}),       hub_tree({12, 12}),   hub_tree({11, 11}),     hub_tree({10, 12}),
      hub_tree({12, 12, 12}), hub_tree({11, 0}),  hub_tree({10, 10, 11}), hub_tree({}),
  };
  Rng rng(seed);
  const Graph named[] = {path(5), cycle(6), star(14), complete(5), empty_graph(3),
                         disjoint_union(complete(3), complete(3)), rook4x4(), shrikhande()};
  for (const auto& g : named) out.push_back(with_random_labels(g, rng, 0.5));
  while (out.size() < count) {
    if (out.size() % 4 == 0) {
      // Random hub tree with extra random edges among its leaves.
      std::vector<std::size_t> leaves(uniform_index(rng, 1, 3));
      for (auto& c : leaves) c = uniform_index(rng, 9, 13);
      const Graph t = hub_tree(leaves);
      std::vector<Edge> e = t.edges();
      for (int extra = 0; extra < 5; ++extra) {
        const auto a = static_cast<Vertex>(uniform_index(rng, 0, t.order() - 1));
        const auto b = static_cast<Vertex>(uniform_index(rng, 0, t.order() - 1));
        if (a != b && !t.adjacent(a, b)) {
          bool dup = false;
          for (const auto& [u, v] : e) dup = dup || (u == a && v == b) || (u == b && v == a);
          if (!dup) e.emplace_back(a, b);
        }
      }
      out.push_back(with_random_labels(Graph::from_edges(t.order(), std::move(e)), rng, 0.8));
    } else {
      out.push_back(random_labelled_graph(uniform_index(rng, 2, 20),
                                          0.1 + 0.2 * static_cast<double>(uniform_index(rng, 0, 3)), 1, rng));
    }
  }
  out.resize(count);
  return out;
}

}  // namespace wlgnn
