#include "wlgnn/fragment.hpp"

#include <algorithm>
#include <set>

namespace wlgnn {
namespace {

bool is_guard_atom(const FormulaNode& f, const std::string& y, std::string& source) {
  if (f.kind != FormulaKind::Edge || f.a == f.b) return false;
  if (f.b == y) {
    source = f.a;
    return true;
  }
  if (f.a == y) {
    source = f.b;
    return true;
  }
  return false;
}

const char* kind_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::VarEq: return "=";
    case FormulaKind::Edge: return "E";
    case FormulaKind::Rel: return "R";
    case FormulaKind::Label: return "P";
    case FormulaKind::Not: return "not";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Exists: return "existsGE";
  }
  return "?";
}

struct Walker {
  FragmentReport report;
  std::set<std::string> vars;

  void flag_guard(const std::string& path, const std::string& why) {
    if (report.is_guarded) {
      report.is_guarded = false;
      report.is_gc2 = false;
      if (report.violation.empty()) {
        report.violation = path.empty() ? "<root>" : path;
        report.violation_reason = why;
      }
    }
  }
  void flag_gc2(const std::string& path, const std::string& why) {
    if (report.is_gc2) {
      report.is_gc2 = false;
      if (report.violation.empty()) {
        report.violation = path.empty() ? "<root>" : path;
        report.violation_reason = why;
      }
    }
  }

  void walk(const Formula& f, const std::string& path, bool as_guard) {
    const FormulaNode& n = *f;
    if (!n.a.empty()) vars.insert(n.a);
    if (!n.b.empty()) vars.insert(n.b);
    switch (n.kind) {
      case FormulaKind::Label: return;
      case FormulaKind::VarEq:
      case FormulaKind::Edge:
        if (!as_guard && n.a != n.b) flag_gc2(path, "binary atom outside a guard");
        return;
      case FormulaKind::Rel: flag_gc2(path, "relation atoms are not graph formulas"); return;
      case FormulaKind::Not:
      case FormulaKind::And:
      case FormulaKind::Or:
        for (std::size_t i = 0; i < n.children.size(); ++i)
          walk(n.children[i], path + "/" + kind_name(n.kind) + "[" + std::to_string(i) + "]",
               false);
        return;
      case FormulaKind::Exists: {
        const std::string here = path + "/existsGE[" + std::to_string(n.index) + "]";
        GuardSplit split;
        if (!split_guard(n, split)) {
          flag_guard(here, "quantifier body is not E(x," + n.a + ") conjoined with a formula in " +
                               n.a);
          walk(n.children[0], here, false);
          return;
        }
        const FormulaNode& body = *n.children[0];
        if (body.kind == FormulaKind::Edge) {
          vars.insert(body.a);
          vars.insert(body.b);
          return;
        }
        bool guard_seen = false;
        for (std::size_t i = 0; i < body.children.size(); ++i) {
          std::string src;
          const bool is_guard = !guard_seen && is_guard_atom(*body.children[i], n.a, src);
          guard_seen = guard_seen || is_guard;
          walk(body.children[i], here + "/and[" + std::to_string(i) + "]", is_guard);
        }
        return;
      }
    }
  }
};

}  // namespace

bool split_guard(const FormulaNode& q, GuardSplit& out) {
  if (q.kind != FormulaKind::Exists) return false;
  const std::string& y = q.a;
  const FormulaNode& body = *q.children[0];
  std::string source;
  if (is_guard_atom(body, y, source)) {
    out.source = source;
    out.rest = nullptr;
    return true;
  }
  if (body.kind != FormulaKind::And) return false;
  for (std::size_t i = 0; i < body.children.size(); ++i) {
    if (!is_guard_atom(*body.children[i], y, source)) continue;
    std::vector<Formula> rest;
    for (std::size_t j = 0; j < body.children.size(); ++j)
      if (j != i) rest.push_back(body.children[j]);
    bool confined = true;
    for (const auto& r : rest)
      for (const auto& v : r->free)
        if (v != y) confined = false;
    if (!confined) continue;
    out.source = source;
    out.rest = rest.empty() ? nullptr : rest.size() == 1 ? rest[0] : conj(std::move(rest));
    return true;
  }
  return false;
}

FragmentReport fragment_check(const Formula& f) {
  Walker w;
  w.walk(f, "", false);
  w.report.variable_count = w.vars.size();
  w.report.quantifier_rank = f->rank;
  if (w.report.variable_count > 2) w.flag_gc2("", "more than two variables");
  if (f->free.size() > 1) w.flag_gc2("", "more than one free variable");
  if (w.report.violation.empty() == false && w.report.violation.front() == '/')
    w.report.violation.erase(0, 1);
  return w.report;
}

}  // namespace wlgnn
