#include "wlgnn/derived_structure.hpp"

#include <string>
#include <vector>

#include "wlgnn/atomic_type.hpp"

namespace wlgnn {

BinaryStructure derived_structure(const Graph& g, std::size_t k, std::size_t tuple_budget) {
  if (k == 0) throw std::invalid_argument("derived_structure: k must be at least 1");
  const std::size_t n = g.order();
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && tuples > tuple_budget / n)
      throw BudgetExceeded("derived_structure: n^k exceeds the tuple budget");
    tuples *= n;
  }
  if (tuples > tuple_budget)
    throw BudgetExceeded("derived_structure: n^k exceeds the tuple budget");
  const std::size_t width = atomic_type_width(g, k);
  if (width > kMaxDerivedTypeBits)
    throw BudgetExceeded("derived_structure: atomic types of width " + std::to_string(width) +
                         " need more than 2^" + std::to_string(kMaxDerivedTypeBits) +
                         " labels");

  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * n;

  std::vector<std::vector<Edge>> relations(k);
  std::vector<std::vector<std::uint8_t>> labels(std::size_t{1} << width,
                                                std::vector<std::uint8_t>(tuples, 0));
  std::vector<Vertex> t(k);
  for (std::size_t idx = 0; idx < tuples; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      t[i] = static_cast<Vertex>(rest % n);
      rest /= n;
    }
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t base = idx - t[i] * stride[i];
      for (std::size_t w = 0; w < n; ++w)
        if (w != t[i])
          relations[i].emplace_back(static_cast<Vertex>(idx),
                                    static_cast<Vertex>(base + w * stride[i]));
    }
    const AtomicType a = atomic_type(g, t);
    std::size_t theta = 0;
    for (auto b : a.bits) theta = (theta << 1) | b;
    labels[theta][idx] = 1;
  }
  const std::size_t label_count = labels.size();
  return BinaryStructure(tuples, std::move(relations), label_count, std::move(labels));
}

}  // namespace wlgnn
