#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wlgnn/graph.hpp"
#include "wlgnn/interner.hpp"
#include "wlgnn/multiset.hpp"

namespace wlgnn {

/// Thrown when two colourings are compared over different universes/arity.
class ColouringMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A colouring of V^k. Tuples are indexed in mixed radix n with the first
/// component most significant, so index(v1..vk) = ((v1*n + v2)*n + ...) + vk.
struct Colouring {
  std::size_t arity = 1;
  std::size_t n = 0;
  std::size_t round = 0;
  std::vector<ColourId> ids;

  std::size_t tuple_count() const noexcept { return ids.size(); }
  std::size_t index(std::span<const Vertex> tuple) const;
  std::vector<Vertex> tuple(std::size_t index) const;
  ColourId at(std::span<const Vertex> tuple) const { return ids[index(tuple)]; }
  ColourId operator[](std::size_t i) const { return ids[i]; }
};

/// Class labels 0,1,2,... by first occurrence: equal vectors iff equal partitions.
std::vector<std::uint32_t> canonical_partition(std::span<const ColourId> ids);
std::size_t class_count(std::span<const ColourId> ids);
inline std::size_t class_count(const Colouring& c) { return class_count(c.ids); }

/// Classes as sorted index lists, ordered by their smallest member.
std::vector<std::vector<std::size_t>> partition_classes(std::span<const ColourId> ids);

/// chi refines chi2: every chi-class lies inside a chi2-class.
bool refines(const Colouring& chi, const Colouring& chi2);
bool equivalent(const Colouring& chi, const Colouring& chi2);
bool refines(std::span<const ColourId> chi, std::span<const ColourId> chi2);
bool equivalent(std::span<const ColourId> chi, std::span<const ColourId> chi2);

using ColourMultiset = Multiset<ColourId>;
ColourMultiset hat_invariant(const Colouring& chi);

}  // namespace wlgnn
