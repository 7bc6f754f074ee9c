#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlgnn/formula.hpp"
#include "wlgnn/gnn.hpp"

namespace wlgnn {

/// Rejected compiler input. `path` locates the offending subformula.
class CompileError : public std::invalid_argument {
 public:
  CompileError(const std::string& what, std::string path)
      : std::invalid_argument(what), path(std::move(path)) {}
  std::string path;
};

/// One modal operation over earlier plan entries. A guarded quantifier
/// exists^{>=p} y (E(x,y) and psi(y)) is a single Diamond node over psi.
struct PlanNode {
  enum class Kind { Label, True, False, Not, And, Or, Diamond };
  Kind kind = Kind::True;
  std::size_t index = 0;             // label index, or threshold p for Diamond
  std::vector<std::size_t> args;     // plan positions, sorted for And/Or
  Formula formula;                   // a representative subformula
  std::string var;                   // its free variable
};

/// Label atoms P_1..P_l come first, then every other subformula once, each
/// after its arguments. The root is the entry the readout projects.
struct SubformulaPlan {
  std::size_t labels = 0;
  std::vector<PlanNode> nodes;
  std::size_t root = 0;

  std::size_t size() const { return nodes.size(); }
  /// Entries above the label atoms, i.e. compiled layers.
  std::size_t operation_count() const { return nodes.size() - labels; }
};

/// Throws CompileError unless f is GC^2 (guarded, two variables, one free).
/// `labels` is raised to cover every label the formula mentions.
SubformulaPlan plan_formula(const Formula& f, std::size_t labels = 0);

struct CompiledGnn {
  SubformulaPlan plan;
  GnnModel model;
};

/// One lsig layer per non-label plan entry: layer t copies coordinates
/// 1..l+t-1 and appends the truth value of entry l+t. Rational weights.
CompiledGnn compile_formula(const Formula& f, std::size_t labels = 0);

struct CertificateFailure {
  std::size_t graph = 0;
  Vertex vertex = 0;
  std::size_t layer = 0;       // 0 = initial features
  std::size_t coordinate = 0;  // 0-based plan position
  bool expected = false;
  std::string got;             // the exact value found
  std::string subformula;
};

struct Certificate {
  bool pass = true;
  /// True when the corpus was empty, so nothing was checked.
  bool vacuous = false;
  std::size_t graphs = 0;
  std::size_t vertices = 0;
  std::size_t checks = 0;
  std::optional<CertificateFailure> failure;  // earliest graph, then layer, vertex, coordinate
};

/// Checks after every layer that each computed coordinate is exactly 0 or 1
/// and equals the evaluator's verdict for its plan entry. Needs rational mode.
Certificate certify(const CompiledGnn& compiled, const std::vector<Graph>& corpus);

}  // namespace wlgnn
