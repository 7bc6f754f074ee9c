#include "wlgnn/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>

namespace wlgnn {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw GraphError(what);
}

}  // namespace

double unit_double(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Graph empty_graph(std::size_t n) {
  require(n >= 1, "empty_graph: n must be at least 1");
  return Graph(n, 0);
}

Graph path(std::size_t n) {
  require(n >= 1, "path: n must be at least 1");
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i)
    e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  return Graph::from_edges(n, std::move(e));
}

Graph cycle(std::size_t n) {
  require(n >= 3, "cycle: n must be at least 3");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return Graph::from_edges(n, std::move(e));
}

Graph complete(std::size_t n) {
  require(n >= 1, "complete: n must be at least 1");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return Graph::from_edges(n, std::move(e));
}

Graph star(std::size_t n) {
  require(n >= 2, "star: n must be at least 2");
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, static_cast<Vertex>(i));
  return Graph::from_edges(n, std::move(e));
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  const auto shift = static_cast<Vertex>(g.order());
  std::vector<Edge> e = g.edges();
  for (const auto& [u, v] : h.edges()) e.emplace_back(u + shift, v + shift);
  std::vector<LabelEntry> labels = g.label_entries();
  for (const auto& l : h.label_entries()) labels.push_back({l.vertex + shift, l.label});
  return Graph(g.order() + h.order(), std::max(g.label_count(), h.label_count()),
               std::move(e), labels);
}

Graph rook4x4() {
  std::vector<Edge> e;
  for (Vertex a = 0; a < 16; ++a)
    for (Vertex b = a + 1; b < 16; ++b)
      if (a / 4 == b / 4 || a % 4 == b % 4) e.emplace_back(a, b);
  return Graph::from_edges(16, std::move(e));
}

Graph shrikhande() {
  const int gens[6][2] = {{1, 0}, {3, 0}, {0, 1}, {0, 3}, {1, 1}, {3, 3}};
  std::vector<Edge> e;
  for (Vertex a = 0; a < 16; ++a)
    for (Vertex b = a + 1; b < 16; ++b) {
      const int dx = (static_cast<int>(b / 4) - static_cast<int>(a / 4) + 4) % 4;
      const int dy = (static_cast<int>(b % 4) - static_cast<int>(a % 4) + 4) % 4;
      for (const auto& gdir : gens)
        if (gdir[0] == dx && gdir[1] == dy) {
          e.emplace_back(a, b);
          break;
        }
    }
  return Graph::from_edges(16, std::move(e));
}

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  require(n >= 1, "gnp: n must be at least 1");
  require(p >= 0.0 && p <= 1.0, "gnp: p must lie in [0, 1]");
  std::vector<Edge> e;
  if (p == 0.0 || n == 1) return Graph::from_edges(n, std::move(e));
  if (p == 1.0) return complete(n);
  std::mt19937_64 rng(seed);
  const double log_q = std::log1p(-p);
  // Walk the strictly-lower-triangular pairs (v, w), w < v, skipping
  // geometrically distributed gaps.
  long long v = 1;
  long long w = -1;
  const auto nn = static_cast<long long>(n);
  while (v < nn) {
    const double r = unit_double(rng());
    w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) e.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, std::move(e));
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(n >= 1 && d < n, "random_regular: need d < n");
  require((n * d) % 2 == 0, "random_regular: n*d must be even");
  if (2 * d > n - 1) {
    // Dense case: complement of a sparse regular graph.
    const Graph sparse = random_regular(n, n - 1 - d, seed);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (!sparse.adjacent(u, v)) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
  }
  // Steger-Wormald: pair random free points, refusing loops and multi-edges.
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t bound) {
    return static_cast<std::size_t>(unit_double(rng()) * static_cast<double>(bound));
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vertex> points;
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < d; ++i) points.push_back(static_cast<Vertex>(v));
    std::set<Edge> seen;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 64 && !paired; ++tries) {
        const std::size_t i = below(points.size()), j = below(points.size());
        Vertex a = points[i], b = points[j];
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (seen.contains({a, b})) continue;
        seen.insert({a, b});
        const std::size_t hi = std::max(i, j), lo = std::min(i, j);
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
        paired = true;
      }
      if (!paired) {
        // Few points left: check exhaustively whether any legal pair exists.
        stuck = true;
        for (std::size_t i = 0; i < points.size() && stuck; ++i)
          for (std::size_t j = i + 1; j < points.size() && stuck; ++j) {
            const Vertex a = std::min(points[i], points[j]), b = std::max(points[i], points[j]);
            if (a != b && !seen.contains({a, b})) stuck = false;
          }
      }
    }
    if (!stuck) return Graph::from_edges(n, {seen.begin(), seen.end()});
  }
  throw GraphError("random_regular: failed to produce a simple graph");
}

std::pair<Graph, Graph> chorded_hexagon_pair() {
  Graph chorded = Graph::from_edges(
      6, {{0, 1}, {0, 5}, {2, 1}, {2, 3}, {2, 5}, {4, 3}, {4, 5}});
  Graph triangles = Graph::from_edges(
      6, {{0, 1}, {0, 5}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {4, 3}});
  return {std::move(chorded), std::move(triangles)};
}

}  // namespace wlgnn
