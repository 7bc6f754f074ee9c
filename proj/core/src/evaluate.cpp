#include "wlgnn/evaluate.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace wlgnn {
namespace {

template <class S>
class Evaluator {
 public:
  explicit Evaluator(const S& s) : s_(s) {}

  bool eval(const FormulaNode* f, Assignment& env) {
    std::uint64_t key = 0;
    const bool memo = memo_key(f, env, key);
    if (memo) {
      auto& table = memo_[f];
      if (auto it = table.find(key); it != table.end()) return it->second;
      const bool r = compute(f, env);
      memo_[f].emplace(key, r);
      return r;
    }
    return compute(f, env);
  }

 private:
  Vertex lookup(const std::string& v, const Assignment& env) const {
    auto it = env.find(v);
    if (it == env.end()) throw EvalError("free variable '" + v + "' is unbound");
    return it->second;
  }

  // Packs the values of up to two free variables; larger scopes are not memoised.
  bool memo_key(const FormulaNode* f, const Assignment& env, std::uint64_t& key) const {
    if (f->free.size() > 2 || f->kind != FormulaKind::Exists) return false;
    key = 0;
    for (const auto& v : f->free) key = (key << 32) | lookup(v, env);
    return true;
  }

  bool related(std::size_t r, Vertex u, Vertex v) const {
    if constexpr (std::is_same_v<S, Graph>) {
      if (r != 0) throw EvalError("graphs have a single edge relation");
      return s_.adjacent(u, v);
    } else {
      if (r >= s_.relation_count()) throw EvalError("relation index out of range");
      return s_.related(r, u, v);
    }
  }

  // If f is E(x, y) or E(y, x) with x != y bound in env, returns x's value.
  bool guard_source(const FormulaNode* f, const std::string& y, const Assignment& env,
                    Vertex& x) const {
    if (f->kind != FormulaKind::Edge) return false;
    if (f->a == y && f->b != y && env.contains(f->b)) {
      x = env.at(f->b);
      return true;
    }
    if (f->b == y && f->a != y && env.contains(f->a)) {
      x = env.at(f->a);
      return true;
    }
    return false;
  }

  bool compute(const FormulaNode* f, Assignment& env) {
    switch (f->kind) {
      case FormulaKind::VarEq: return lookup(f->a, env) == lookup(f->b, env);
      case FormulaKind::Edge: return related(0, lookup(f->a, env), lookup(f->b, env));
      case FormulaKind::Rel: return related(f->index, lookup(f->a, env), lookup(f->b, env));
      case FormulaKind::Label:
        if (f->index >= s_.label_count()) return false;
        return s_.has_label(lookup(f->a, env), f->index);
      case FormulaKind::Not: return !eval(f->children[0].get(), env);
      case FormulaKind::And:
        for (const auto& c : f->children)
          if (!eval(c.get(), env)) return false;
        return true;
      case FormulaKind::Or:
        for (const auto& c : f->children)
          if (eval(c.get(), env)) return true;
        return false;
      case FormulaKind::Exists: return count(f, env);
    }
    return false;
  }

  bool count(const FormulaNode* f, Assignment& env) {
    const std::string& y = f->a;
    const FormulaNode* body = f->children[0].get();
    const std::size_t p = f->index;
    std::optional<Vertex> saved;
    if (auto it = env.find(y); it != env.end()) saved = it->second;

    bool guarded = false;
    Vertex x = 0;
    if constexpr (std::is_same_v<S, Graph>) {
      if (guard_source(body, y, env, x)) guarded = true;
      if (body->kind == FormulaKind::And)
        for (const auto& c : body->children)
          if (guard_source(c.get(), y, env, x)) {
            guarded = true;
            break;
          }
    }
    std::size_t hits = 0;
    auto try_vertex = [&](Vertex w) {
      env[y] = w;
      if (eval(body, env)) ++hits;
      return hits >= p;
    };
    bool done = false;
    if (guarded) {
      if constexpr (std::is_same_v<S, Graph>) {
        for (Vertex w : s_.neighbours(x))
          if (try_vertex(w)) {
            done = true;
            break;
          }
      }
    } else {
      for (Vertex w = 0; w < s_.order(); ++w)
        if (try_vertex(w)) {
          done = true;
          break;
        }
    }
    if (saved) env[y] = *saved;
    else env.erase(y);
    return done;
  }

  const S& s_;
  std::unordered_map<const FormulaNode*, std::unordered_map<std::uint64_t, bool>> memo_;
};

template <class S>
bool evaluate_impl(const Formula& f, const S& s, const Assignment& assignment) {
  for (const auto& v : f->free) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw EvalError("free variable '" + v + "' is unbound");
    if (it->second >= s.order())
      throw EvalError("variable '" + v + "' is assigned a vertex outside the graph");
  }
  Evaluator<S> ev(s);
  Assignment env = assignment;
  return ev.eval(f.get(), env);
}

}  // namespace

bool evaluate(const Formula& f, const Graph& g, const Assignment& assignment) {
  return evaluate_impl(f, g, assignment);
}

bool evaluate(const Formula& f, const BinaryStructure& s, const Assignment& assignment) {
  return evaluate_impl(f, s, assignment);
}

std::vector<bool> evaluate_all(const Formula& f, const Graph& g, const std::string& var) {
  for (const auto& v : f->free)
    if (v != var) throw EvalError("free variable '" + v + "' is unbound");
  Evaluator<Graph> ev(g);
  std::vector<bool> out(g.order());
  Assignment env;
  for (Vertex v = 0; v < g.order(); ++v) {
    env[var] = v;
    out[v] = ev.eval(f.get(), env);
  }
  return out;
}

}  // namespace wlgnn
