#include "wlgnn/iso_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wlgnn/generators.hpp"
#include "wlgnn/refinement_fast.hpp"

namespace wlgnn {
namespace {

using Invariant = std::vector<std::uint64_t>;

std::uint64_t clique_count(const Graph& g, Vertex v, std::size_t size) {
  // Cliques of the given size (3 or 4) through v.
  const auto nb = g.neighbours(v);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (!g.adjacent(nb[i], nb[j])) continue;
      if (size == 3) {
        ++c;
        continue;
      }
      for (std::size_t k = j + 1; k < nb.size(); ++k)
        if (g.adjacent(nb[i], nb[k]) && g.adjacent(nb[j], nb[k])) ++c;
    }
  return c;
}

std::vector<Invariant> invariants(const Graph& g, const std::vector<std::uint32_t>* cr, std::size_t offset) {
  std::vector<Invariant> inv(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    inv[v].push_back(g.degree(v));
    for (std::size_t l = 0; l < g.label_count(); ++l) inv[v].push_back(g.has_label(v, l));
    if (cr) {
      inv[v].push_back((*cr)[offset + v]);
      inv[v].push_back(clique_count(g, v, 3));
      inv[v].push_back(clique_count(g, v, 4));
    }
  }
  return inv;
}

class Search {
 public:
  Search(const Graph& g, const Graph& h, std::vector<Invariant> ig, std::vector<Invariant> ih)
      : g_(g), h_(h), ig_(std::move(ig)), ih_(std::move(ih)), map_(g.order()), used_(h.order(), false) {
    order_.resize(g.order());
    std::iota(order_.begin(), order_.end(), 0);
    // Rare invariants first, then by degree, to fail early.
    std::vector<std::size_t> freq(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
      freq[v] = static_cast<std::size_t>(std::count(ig_.begin(), ig_.end(), ig_[v]));
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      return freq[a] != freq[b] ? freq[a] < freq[b] : g.degree(a) > g.degree(b);
    });
  }

  /// Calls visit for each isomorphism until it returns false.
  void enumerate(const std::function<bool(const std::vector<Vertex>&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    extend(0);
  }

 private:
  void extend(std::size_t depth) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!(*visit_)(map_)) stop_ = true;
      return;
    }
    const Vertex v = order_[depth];
    for (Vertex w = 0; w < h_.order() && !stop_; ++w) {
      if (used_[w] || ih_[w] != ig_[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Vertex u = order_[d];
        ok = g_.adjacent(u, v) == h_.adjacent(map_[u], w);
      }
      if (!ok) continue;
      map_[v] = w;
      used_[w] = true;
      extend(depth + 1);
      used_[w] = false;
    }
  }

  const Graph& g_;
  const Graph& h_;
  std::vector<Invariant> ig_, ih_;
  std::vector<Vertex> order_;
  std::vector<Vertex> map_;
  std::vector<bool> used_;
  const std::function<bool(const std::vector<Vertex>&)>* visit_ = nullptr;
  bool stop_ = false;
};

}  // namespace

IsoResult oracle_isomorphic(const Graph& g, const Graph& h, const IsoOptions& opt) {
  const std::size_t cap = opt.invariant_pruning ? 16 : 8;
  if (g.order() > cap || h.order() > cap)
    throw OracleSizeError("isomorphism oracle is limited to " + std::to_string(cap) + " vertices");
  IsoResult r;
  if (g.order() != h.order() || g.edge_count() != h.edge_count() || g.label_count() != h.label_count())
    return r;
  std::vector<std::uint32_t> cr;
  if (opt.invariant_pruning) cr = colour_refinement_fast(disjoint_union(g, h)).class_of;
  auto ig = invariants(g, opt.invariant_pruning ? &cr : nullptr, 0);
  auto ih = invariants(h, opt.invariant_pruning ? &cr : nullptr, g.order());
  auto sg = ig, sh = ih;
  std::sort(sg.begin(), sg.end());
  std::sort(sh.begin(), sh.end());
  if (sg != sh) return r;
  Search s(g, h, std::move(ig), std::move(ih));
  s.enumerate([&](const std::vector<Vertex>& m) {
    r.isomorphic = true;
    r.witness = m;
    return false;
  });
  return r;
}

std::vector<std::uint32_t> automorphism_orbits(const Graph& g) {
  if (g.order() > 8) throw OracleSizeError("orbit computation is limited to 8 vertices");
  std::vector<std::uint32_t> parent(g.order());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  Search s(g, g, invariants(g, nullptr, 0), invariants(g, nullptr, 0));
  s.enumerate([&](const std::vector<Vertex>& m) {
    for (Vertex v = 0; v < g.order(); ++v) {
      const auto a = find(v), b = find(m[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    return true;
  });
  std::vector<std::uint32_t> ids(g.order()), first(g.order(), UINT32_MAX);
  std::uint32_t next = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto root = find(v);
    if (first[root] == UINT32_MAX) first[root] = next++;
    ids[v] = first[root];
  }
  return ids;
}

}  // namespace wlgnn
