#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace wlgnn {

/// Counting-logic formula node. Formulas are immutable DAGs: subformulas
/// may be shared, which the synthesizer relies on to stay polynomial.
enum class FormulaKind {
  VarEq,   // x = y
  Edge,    // E(x, y)
  Rel,     // R_i(x, y), for binary structures
  Label,   // P_i(x)
  Not,
  And,
  Or,
  Exists,  // exists^{>=p} y . body
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FormulaNode {
  FormulaKind kind;
  std::size_t index = 0;  // label/relation index (0-based) or threshold p
  std::string a, b;       // variables: atoms use a (and b); Exists binds a
  std::vector<Formula> children;
  std::vector<std::string> free;  // sorted, cached at construction
  std::size_t rank = 0;           // quantifier rank, cached
};

Formula var_eq(std::string x, std::string y);
Formula edge(std::string x, std::string y);
Formula rel(std::size_t i, std::string x, std::string y);
Formula label(std::size_t i, std::string x);
Formula negate(Formula f);
Formula conj(std::vector<Formula> fs);  // at least one conjunct
Formula disj(std::vector<Formula> fs);  // at least one disjunct
Formula exists_ge(std::size_t p, std::string y, Formula body);  // p >= 1

// Sugar, desugared on construction.
Formula top(const std::string& x);                   // x = x
Formula exists(const std::string& y, Formula body);  // exists^{>=1}
Formula forall(const std::string& y, Formula body);  // not exists^{>=1} not

bool is_free(const Formula& f, const std::string& var);

/// Number of nodes in the DAG (shared nodes counted once).
std::size_t dag_size(const Formula& f);
/// Number of nodes in the tree expansion, saturating at SIZE_MAX.
std::size_t tree_size(const Formula& f);

/// Structural equality of the tree expansions.
bool same_formula(const Formula& f, const Formula& g);

}  // namespace wlgnn
