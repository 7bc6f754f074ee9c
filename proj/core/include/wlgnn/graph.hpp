#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wlgnn {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Thrown when a graph or structure is built from inconsistent data.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Label assignment: vertex v carries label i (0-based).
struct LabelEntry {
  Vertex vertex;
  std::size_t label;
};

/// Finite, simple, undirected, vertex-labelled graph.
///
/// Values are immutable once constructed. Edges are kept in insertion order
/// (for order-preserving serialization) alongside a sorted adjacency index.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on vertices 0..n-1. Self-loops, duplicate edges and
  /// out-of-range ids throw GraphError.
  Graph(std::size_t n, std::size_t label_count, std::vector<Edge> edges = {},
        const std::vector<LabelEntry>& labels = {});

  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    return Graph(n, 0, std::move(edges));
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t label_count() const noexcept { return label_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edges in insertion order, endpoints as given.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbours(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  bool has_label(Vertex v, std::size_t label) const {
    return labels_[label][v] != 0;
  }
  /// col(G, v): the label bit-vector of v (empty when unlabelled).
  std::vector<std::uint8_t> colour(Vertex v) const;
  const std::vector<std::uint8_t>& label_row(std::size_t label) const {
    return labels_[label];
  }

  /// The image of this graph under the vertex bijection v -> perm[v].
  Graph permuted(std::span<const Vertex> perm) const;

  /// Same edges, different labelling.
  Graph relabelled(std::size_t label_count,
                   const std::vector<LabelEntry>& labels) const;

  /// Label entries sorted by (vertex, label).
  std::vector<LabelEntry> label_entries() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t n_ = 0;
  std::size_t label_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<std::vector<std::uint8_t>> labels_;
  std::vector<std::uint64_t> dense_;  // n*n adjacency bits for small graphs
};

/// Directed binary relational structure with unary labels.
/// Self-loops are permitted; pairs within one relation are deduplicated.
class BinaryStructure {
 public:
  BinaryStructure() = default;
  BinaryStructure(std::size_t n, std::vector<std::vector<Edge>> relations,
                  std::size_t label_count,
                  std::vector<std::vector<std::uint8_t>> label_rows);

  std::size_t order() const noexcept { return n_; }
  std::size_t relation_count() const noexcept { return out_.size(); }
  std::size_t label_count() const noexcept { return labels_.size(); }

  bool related(std::size_t relation, Vertex u, Vertex v) const;
  std::span<const Vertex> out_neighbours(std::size_t relation, Vertex v) const {
    const auto& o = out_[relation];
    return {o.targets.data() + o.offsets[v], o.targets.data() + o.offsets[v + 1]};
  }
  std::span<const Vertex> in_neighbours(std::size_t relation, Vertex v) const {
    const auto& o = in_[relation];
    return {o.targets.data() + o.offsets[v], o.targets.data() + o.offsets[v + 1]};
  }
  std::size_t pair_count(std::size_t relation) const {
    return out_[relation].targets.size();
  }
  bool has_label(Vertex v, std::size_t label) const {
    return labels_[label][v] != 0;
  }
  /// col(A, v): self-loop bit per relation followed by the label bits.
  std::vector<std::uint8_t> colour(Vertex v) const;

  /// Views a graph as a structure with one symmetric relation.
  static BinaryStructure from_graph(const Graph& g);

 private:
  struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<Vertex> targets;  // sorted per vertex
  };
  std::size_t n_ = 0;
  std::vector<Csr> out_;
  std::vector<Csr> in_;
  std::vector<std::vector<std::uint8_t>> labels_;
};

}  // namespace wlgnn
