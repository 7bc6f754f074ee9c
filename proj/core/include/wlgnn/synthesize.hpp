#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>

#include "wlgnn/formula.hpp"
#include "wlgnn/graph.hpp"
#include "wlgnn/interner.hpp"

namespace wlgnn {

/// Builds GC^2 formulas that separate colour-refinement colours, following the
/// inductive argument that equal colours satisfy the same guarded formulas.
/// Colours are decoded through the interner that produced them, which must
/// hold colour-refinement keys.
class SeparatorSynthesizer {
 public:
  explicit SeparatorSynthesizer(const ColourInterner& interner) : interner_(interner) {}

  /// phi(var) with rank <= round that holds on vertices of colour c and fails
  /// on vertices of colour c2 (both round-`round` colours, c != c2).
  /// var must be "x" or "y"; the other one is used for quantification.
  Formula separate(std::size_t round, ColourId c, ColourId c2, const std::string& var);

  std::size_t memo_entries() const { return memo_.size(); }

 private:
  const ColourInterner& interner_;
  std::map<std::tuple<std::size_t, ColourId, ColourId, std::string>, Formula> memo_;
};

struct SynthesisResult {
  bool distinguished = false;
  Formula formula;  // free variable x; null when not distinguished
  std::size_t dag_nodes = 0;
  std::size_t tree_nodes = 0;  // saturates at SIZE_MAX
  std::size_t rank = 0;
};

/// If colref^t(G, v) != colref^t(H, w), a formula phi(x) with G |= phi(v) and
/// H |/= phi(w); otherwise distinguished = false.
SynthesisResult synthesize_distinguishing_formula(const Graph& g, Vertex v, const Graph& h,
                                                  Vertex w, std::size_t t);

}  // namespace wlgnn
