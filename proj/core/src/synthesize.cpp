#include "wlgnn/synthesize.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "wlgnn/wl.hpp"

namespace wlgnn {
namespace {

struct Decoded {
  ColourId prev = 0;
  std::map<ColourId, std::size_t> neighbours;
};

Decoded decode(const ColourKey& key) {
  // [round, tag, prev, distinct, (colour, multiplicity)...]
  Decoded d;
  d.prev = static_cast<ColourId>(key.at(2));
  const std::size_t distinct = key.at(3);
  for (std::size_t i = 0; i < distinct; ++i)
    d.neighbours[static_cast<ColourId>(key.at(4 + 2 * i))] = key.at(5 + 2 * i);
  return d;
}

bool label_bit(const ColourKey& key, std::size_t i) {
  // [0, tag, 1, width, packed words...]
  if (i >= key.at(3)) return false;
  return (key.at(4 + i / 64) >> (i % 64)) & 1u;
}

}  // namespace

Formula SeparatorSynthesizer::separate(std::size_t round, ColourId c, ColourId c2,
                                       const std::string& var) {
  if (c == c2) throw std::invalid_argument("cannot separate a colour from itself");
  const auto memo_key = std::make_tuple(round, c, c2, var);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
  const std::string other = var == "x" ? "y" : "x";
  const ColourKey k1 = interner_.key(c), k2 = interner_.key(c2);
  if (k1.at(0) != round || k2.at(0) != round)
    throw std::invalid_argument("colour ids do not belong to the requested round");

  Formula result;
  if (round == 0) {
    const std::size_t width = std::max(k1.at(3), k2.at(3));
    for (std::size_t i = 0; i < width && !result; ++i) {
      const bool a = label_bit(k1, i), b = label_bit(k2, i);
      if (a != b) result = a ? label(i, var) : negate(label(i, var));
    }
    if (!result) throw std::logic_error("distinct round-0 colours with equal labels");
  } else {
    const Decoded d1 = decode(k1), d2 = decode(k2);
    if (d1.prev != d2.prev) {
      result = separate(round - 1, d1.prev, d2.prev, var);
    } else {
      std::set<ColourId> domain;
      for (const auto& [col, m] : d1.neighbours) domain.insert(col);
      for (const auto& [col, m] : d2.neighbours) domain.insert(col);
      for (ColourId d : domain) {
        const std::size_t p = d1.neighbours.contains(d) ? d1.neighbours.at(d) : 0;
        const std::size_t p2 = d2.neighbours.contains(d) ? d2.neighbours.at(d) : 0;
        if (p == p2) continue;
        // phi_d(other) isolates colour d among the colours that occur here.
        std::vector<Formula> parts;
        for (ColourId e : domain)
          if (e != d) parts.push_back(separate(round - 1, d, e, other));
        Formula phi_d = parts.empty() ? top(other)
                        : parts.size() == 1 ? parts[0]
                                            : conj(std::move(parts));
        if (p > p2) {
          result = exists_ge(p, other, conj({edge(var, other), phi_d}));
        } else {
          result = negate(exists_ge(p2, other, conj({edge(var, other), phi_d})));
        }
        break;
      }
      if (!result) throw std::logic_error("distinct colours with equal decompositions");
    }
  }
  memo_.emplace(memo_key, result);
  return result;
}

SynthesisResult synthesize_distinguishing_formula(const Graph& g, Vertex v, const Graph& h,
                                                  Vertex w, std::size_t t) {
  if (v >= g.order() || w >= h.order()) throw GraphError("vertex outside the graph");
  ColourInterner interner;
  WlOptions opt;
  opt.interner = &interner;
  opt.max_rounds = t;
  opt.stop_when_stable = false;
  const Graph* gs[2] = {&g, &h};
  const auto runs =
      run_joint(Algorithm::ColourRefinement, 1, std::span<const Graph* const>(gs, 2), opt);
  SynthesisResult r;
  const ColourId c = runs[0].rounds[t].ids[v], c2 = runs[1].rounds[t].ids[w];
  if (c == c2) return r;
  SeparatorSynthesizer synth(interner);
  r.distinguished = true;
  r.formula = synth.separate(t, c, c2, "x");
  r.dag_nodes = dag_size(r.formula);
  r.tree_nodes = tree_size(r.formula);
  r.rank = r.formula->rank;
  return r;
}

}  // namespace wlgnn
