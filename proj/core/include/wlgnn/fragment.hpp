#pragma once

#include <cstddef>
#include <string>

#include "wlgnn/formula.hpp"

namespace wlgnn {

struct FragmentReport {
  std::size_t variable_count = 0;  // distinct names, free or bound
  std::size_t quantifier_rank = 0;
  /// Every quantifier reads exists^{>=p} y (E(x,y) and psi) with x != y and
  /// free(psi) a subset of {y}. A bare E(x,y) body counts as psi = true.
  bool is_guarded = true;
  /// Guarded, at most two variables, at most one free variable, and every
  /// atom outside a guard is unary (P_i(x), x = x or E(x, x)). This is the
  /// input class accepted by the GNN compiler.
  bool is_gc2 = true;
  /// Path to the first violation, e.g. "not/existsGE[2]/and[1]", empty if none.
  std::string violation;
  std::string violation_reason;
};

FragmentReport fragment_check(const Formula& f);

/// For a guarded quantifier node: the guard's other variable and the body
/// with the guard removed (nullptr stands for "true").
struct GuardSplit {
  std::string source;
  Formula rest;
};
bool split_guard(const FormulaNode& exists_node, GuardSplit& out);

}  // namespace wlgnn
