#include "wlgnn/formula.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace wlgnn {
namespace {

void check_var(const std::string& v) {
  if (v.empty()) throw FormulaError("empty variable name");
}

std::vector<std::string> merge(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

Formula atom(FormulaKind k, std::size_t index, std::string x, std::string y) {
  check_var(x);
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  n->index = index;
  n->free = {x};
  if (!y.empty()) n->free = merge(n->free, {y});
  n->a = std::move(x);
  n->b = std::move(y);
  return n;
}

Formula connective(FormulaKind k, std::vector<Formula> fs) {
  if (fs.empty()) throw FormulaError("connective needs at least one operand");
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  for (const auto& f : fs) {
    if (!f) throw FormulaError("null operand");
    n->free = merge(std::move(n->free), f->free);
    n->rank = std::max(n->rank, f->rank);
  }
  n->children = std::move(fs);
  return n;
}

}  // namespace

Formula var_eq(std::string x, std::string y) {
  check_var(y);
  return atom(FormulaKind::VarEq, 0, std::move(x), std::move(y));
}
Formula edge(std::string x, std::string y) {
  check_var(y);
  return atom(FormulaKind::Edge, 0, std::move(x), std::move(y));
}
Formula rel(std::size_t i, std::string x, std::string y) {
  check_var(y);
  return atom(FormulaKind::Rel, i, std::move(x), std::move(y));
}
Formula label(std::size_t i, std::string x) { return atom(FormulaKind::Label, i, std::move(x), ""); }

Formula negate(Formula f) { return connective(FormulaKind::Not, {std::move(f)}); }
Formula conj(std::vector<Formula> fs) { return connective(FormulaKind::And, std::move(fs)); }
Formula disj(std::vector<Formula> fs) { return connective(FormulaKind::Or, std::move(fs)); }

Formula exists_ge(std::size_t p, std::string y, Formula body) {
  if (p == 0) throw FormulaError("counting quantifier threshold must be at least 1");
  check_var(y);
  if (!body) throw FormulaError("null quantifier body");
  auto n = std::make_shared<FormulaNode>();
  n->kind = FormulaKind::Exists;
  n->index = p;
  n->free = body->free;
  n->free.erase(std::remove(n->free.begin(), n->free.end(), y), n->free.end());
  n->rank = body->rank + 1;
  n->a = std::move(y);
  n->children = {std::move(body)};
  return n;
}

Formula top(const std::string& x) { return var_eq(x, x); }
Formula exists(const std::string& y, Formula body) { return exists_ge(1, y, std::move(body)); }
Formula forall(const std::string& y, Formula body) {
  return negate(exists_ge(1, y, negate(std::move(body))));
}

bool is_free(const Formula& f, const std::string& var) {
  return std::binary_search(f->free.begin(), f->free.end(), var);
}

std::size_t dag_size(const Formula& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const auto* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->children) stack.push_back(c.get());
  }
  return seen.size();
}

namespace {
std::size_t tree_size_memo(const FormulaNode* n,
                           std::unordered_map<const FormulaNode*, std::size_t>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t s = 1;
  for (const auto& c : n->children) {
    const std::size_t cs = tree_size_memo(c.get(), memo);
    s = (kMax - s < cs) ? kMax : s + cs;
  }
  memo.emplace(n, s);
  return s;
}
}  // namespace

std::size_t tree_size(const Formula& f) {
  std::unordered_map<const FormulaNode*, std::size_t> memo;
  return tree_size_memo(f.get(), memo);
}

bool same_formula(const Formula& f, const Formula& g) {
  if (f.get() == g.get()) return true;
  if (f->kind != g->kind || f->index != g->index || f->a != g->a || f->b != g->b ||
      f->children.size() != g->children.size())
    return false;
  for (std::size_t i = 0; i < f->children.size(); ++i)
    if (!same_formula(f->children[i], g->children[i])) return false;
  return true;
}

}  // namespace wlgnn
