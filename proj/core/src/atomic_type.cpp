#include "wlgnn/atomic_type.hpp"

namespace wlgnn {
namespace {

template <class S>
void check_tuple(const S& s, std::span<const Vertex> tuple) {
  for (Vertex v : tuple)
    if (v >= s.order())
      throw GraphError("tuple entry " + std::to_string(v) + " is not a vertex");
}

}  // namespace

std::string AtomicType::to_string() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::size_t atomic_type_width(const Graph& g, std::size_t k) {
  return k * (k - 1) + k * g.label_count();
}

std::size_t atomic_type_width(const BinaryStructure& s, std::size_t k) {
  return s.relation_count() * k * k + k * (k - 1) / 2 + k * s.label_count();
}

AtomicType atomic_type(const Graph& g, std::span<const Vertex> tuple) {
  check_tuple(g, tuple);
  const std::size_t k = tuple.size();
  AtomicType t;
  t.bits.reserve(atomic_type_width(g, k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      t.bits.push_back(tuple[i] == tuple[j] ? 1 : 0);
      t.bits.push_back(g.adjacent(tuple[i], tuple[j]) ? 1 : 0);
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < g.label_count(); ++l)
      t.bits.push_back(g.has_label(tuple[i], l) ? 1 : 0);
  return t;
}

AtomicType atomic_type(const BinaryStructure& s, std::span<const Vertex> tuple) {
  check_tuple(s, tuple);
  const std::size_t k = tuple.size();
  AtomicType t;
  t.bits.reserve(atomic_type_width(s, k));
  for (std::size_t r = 0; r < s.relation_count(); ++r)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        t.bits.push_back(s.related(r, tuple[i], tuple[j]) ? 1 : 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      t.bits.push_back(tuple[i] == tuple[j] ? 1 : 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < s.label_count(); ++l)
      t.bits.push_back(s.has_label(tuple[i], l) ? 1 : 0);
  return t;
}

}  // namespace wlgnn
