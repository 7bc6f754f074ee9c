#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlgnn/formula.hpp"
#include "wlgnn/graph.hpp"

namespace wlgnn {

using Assignment = std::map<std::string, Vertex>;

class EvalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// G |= f[assignment]. Counting quantifiers iterate over all vertices, or over
/// the neighbours of x when the body is guarded by E(x, y). Results are
/// memoised per (subformula, values of its free variables), so shared
/// subformulas are evaluated once per assignment.
/// Throws EvalError when a free variable is unbound or a vertex is out of range.
bool evaluate(const Formula& f, const Graph& g, const Assignment& assignment = {});
/// Structures: E(x, y) reads relation 0, R_i reads relation i.
bool evaluate(const Formula& f, const BinaryStructure& s, const Assignment& assignment = {});

/// Truth value of f with `var` set to each vertex in turn. free(f) must be a
/// subset of {var}.
std::vector<bool> evaluate_all(const Formula& f, const Graph& g, const std::string& var);

}  // namespace wlgnn
