#include "wlgnn/graph.hpp"

#include <algorithm>
#include <string>

namespace wlgnn {
namespace {

constexpr std::size_t kDenseLimit = 4096;

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

Graph::Graph(std::size_t n, std::size_t label_count, std::vector<Edge> edges,
             const std::vector<LabelEntry>& labels)
    : n_(n), label_count_(label_count), edges_(std::move(edges)) {
  if (n_ > std::size_t{0xFFFFFFFFu}) throw GraphError("graph too large");
  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    if (e.first >= n_ || e.second >= n_)
      throw GraphError("edge " + edge_str(e) + " references a vertex outside 0.." +
                       std::to_string(n_ == 0 ? 0 : n_ - 1));
    if (e.first == e.second) throw GraphError("self-loop " + edge_str(e));
    ++deg[e.first];
    ++deg[e.second];
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  targets_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    targets_[fill[u]++] = v;
    targets_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n_; ++v) {
    auto first = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last)
      throw GraphError("duplicate edge (" + std::to_string(v) + "," +
                       std::to_string(*dup) + ")");
  }
  if (n_ <= kDenseLimit) {
    dense_.assign((n_ * n_ + 63) / 64, 0);
    for (const auto& [u, v] : edges_) {
      dense_[(u * n_ + v) / 64] |= std::uint64_t{1} << ((u * n_ + v) % 64);
      dense_[(v * n_ + u) / 64] |= std::uint64_t{1} << ((v * n_ + u) % 64);
    }
  }
  labels_.assign(label_count_, std::vector<std::uint8_t>(n_, 0));
  for (const auto& entry : labels) {
    if (entry.vertex >= n_)
      throw GraphError("label on vertex " + std::to_string(entry.vertex) +
                       " outside the graph");
    if (entry.label >= label_count_)
      throw GraphError("label index " + std::to_string(entry.label) +
                       " exceeds label count " + std::to_string(label_count_));
    labels_[entry.label][entry.vertex] = 1;
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (!dense_.empty()) {
    const std::size_t bit = std::size_t{u} * n_ + v;
    return (dense_[bit / 64] >> (bit % 64)) & 1u;
  }
  auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint8_t> Graph::colour(Vertex v) const {
  std::vector<std::uint8_t> c(label_count_);
  for (std::size_t i = 0; i < label_count_; ++i) c[i] = labels_[i][v];
  return c;
}

Graph Graph::permuted(std::span<const Vertex> perm) const {
  if (perm.size() != n_) throw GraphError("permutation size mismatch");
  std::vector<std::uint8_t> seen(n_, 0);
  for (Vertex p : perm) {
    if (p >= n_ || seen[p]) throw GraphError("not a permutation");
    seen[p] = 1;
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const auto& [u, v] : edges_) edges.emplace_back(perm[u], perm[v]);
  std::vector<LabelEntry> labels;
  for (const auto& e : label_entries()) labels.push_back({perm[e.vertex], e.label});
  return Graph(n_, label_count_, std::move(edges), labels);
}

Graph Graph::relabelled(std::size_t label_count,
                        const std::vector<LabelEntry>& labels) const {
  return Graph(n_, label_count, edges_, labels);
}

std::vector<LabelEntry> Graph::label_entries() const {
  std::vector<LabelEntry> out;
  for (std::size_t v = 0; v < n_; ++v)
    for (std::size_t i = 0; i < label_count_; ++i)
      if (labels_[i][v]) out.push_back({static_cast<Vertex>(v), i});
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.n_ == b.n_ && a.label_count_ == b.label_count_ &&
         a.offsets_ == b.offsets_ && a.targets_ == b.targets_ &&
         a.labels_ == b.labels_;
}

BinaryStructure::BinaryStructure(std::size_t n,
                                 std::vector<std::vector<Edge>> relations,
                                 std::size_t label_count,
                                 std::vector<std::vector<std::uint8_t>> label_rows)
    : n_(n), labels_(std::move(label_rows)) {
  if (labels_.size() != label_count)
    throw GraphError("label row count does not match label count");
  for (const auto& row : labels_)
    if (row.size() != n_) throw GraphError("label row length differs from order");
  auto build = [n](std::vector<Edge>& pairs, bool reverse) {
    Csr csr;
    csr.offsets.assign(n + 1, 0);
    for (const auto& e : pairs) ++csr.offsets[(reverse ? e.second : e.first) + 1];
    for (std::size_t v = 0; v < n; ++v) csr.offsets[v + 1] += csr.offsets[v];
    csr.targets.resize(pairs.size());
    std::vector<std::size_t> fill(csr.offsets.begin(), csr.offsets.end() - 1);
    for (const auto& e : pairs) {
      const Vertex src = reverse ? e.second : e.first;
      const Vertex dst = reverse ? e.first : e.second;
      csr.targets[fill[src]++] = dst;
    }
    for (std::size_t v = 0; v < n; ++v)
      std::sort(csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v]),
                csr.targets.begin() + static_cast<std::ptrdiff_t>(csr.offsets[v + 1]));
    return csr;
  };
  for (auto& pairs : relations) {
    for (const auto& e : pairs)
      if (e.first >= n_ || e.second >= n_)
        throw GraphError("relation pair " + edge_str(e) + " out of range");
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    out_.push_back(build(pairs, false));
    in_.push_back(build(pairs, true));
  }
}

bool BinaryStructure::related(std::size_t relation, Vertex u, Vertex v) const {
  auto nb = out_neighbours(relation, u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint8_t> BinaryStructure::colour(Vertex v) const {
  std::vector<std::uint8_t> c;
  c.reserve(out_.size() + labels_.size());
  for (std::size_t r = 0; r < out_.size(); ++r) c.push_back(related(r, v, v) ? 1 : 0);
  for (const auto& row : labels_) c.push_back(row[v]);
  return c;
}

BinaryStructure BinaryStructure::from_graph(const Graph& g) {
  std::vector<Edge> pairs;
  pairs.reserve(2 * g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    pairs.emplace_back(u, v);
    pairs.emplace_back(v, u);
  }
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t i = 0; i < g.label_count(); ++i) rows.push_back(g.label_row(i));
  return BinaryStructure(g.order(), {std::move(pairs)}, g.label_count(), std::move(rows));
}

}  // namespace wlgnn
