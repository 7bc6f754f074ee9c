#include "wlgnn/gc2_compiler.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>

#include "wlgnn/evaluate.hpp"
#include "wlgnn/fragment.hpp"
#include "wlgnn/sexpr.hpp"

namespace wlgnn {
namespace {

std::size_t max_label(const Formula& f) {
  std::size_t m = f->kind == FormulaKind::Label ? f->index + 1 : 0;
  for (const auto& c : f->children) m = std::max(m, max_label(c));
  return m;
}

class Planner {
 public:
  explicit Planner(std::size_t labels) {
    plan_.labels = labels;
    for (std::size_t i = 0; i < labels; ++i) {
      PlanNode n;
      n.kind = PlanNode::Kind::Label;
      n.index = i;
      n.formula = label(i, "x");
      n.var = "x";
      add(std::move(n));
    }
  }

  std::size_t translate(const Formula& f, const std::string& cur, const std::string& path) {
    const FormulaNode& n = *f;
    const std::string here = path.empty() ? "<root>" : path;
    switch (n.kind) {
      case FormulaKind::Label:
        if (n.a != cur) throw CompileError("label atom on " + n.a + " inside a subformula about " + cur, here);
        return n.index;
      case FormulaKind::VarEq:
      case FormulaKind::Edge:
        if (n.a != n.b) throw CompileError("binary atom outside a guard", here);
        return constant(n.kind == FormulaKind::VarEq, cur);
      case FormulaKind::Rel: throw CompileError("relation atoms cannot be compiled", here);
      case FormulaKind::Not: {
        const auto s = translate(n.children[0], cur, path + "/not[0]");
        PlanNode p;
        p.kind = PlanNode::Kind::Not;
        p.args = {s};
        return intern(std::move(p), f, cur);
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        const bool is_and = n.kind == FormulaKind::And;
        std::vector<std::size_t> args;
        for (std::size_t i = 0; i < n.children.size(); ++i)
          args.push_back(translate(n.children[i], cur,
                                   path + (is_and ? "/and[" : "/or[") + std::to_string(i) + "]"));
        std::sort(args.begin(), args.end());
        args.erase(std::unique(args.begin(), args.end()), args.end());
        if (args.size() == 1) return args[0];
        PlanNode p;
        p.kind = is_and ? PlanNode::Kind::And : PlanNode::Kind::Or;
        p.args = std::move(args);
        return intern(std::move(p), f, cur);
      }
      case FormulaKind::Exists: {
        const std::string qpath = path + "/existsGE[" + std::to_string(n.index) + "]";
        GuardSplit split;
        if (!split_guard(n, split) || split.source != cur)
          throw CompileError("quantifier is not guarded by E(" + cur + "," + n.a + ")", qpath);
        const std::size_t body = split.rest ? translate(split.rest, n.a, qpath + "/and") : constant(true, n.a);
        PlanNode p;
        p.kind = PlanNode::Kind::Diamond;
        p.index = n.index;
        p.args = {body};
        return intern(std::move(p), f, cur);
      }
    }
    throw CompileError("unsupported formula node", here);
  }

  SubformulaPlan finish(std::size_t root) {
    plan_.root = root;
    return std::move(plan_);
  }

 private:
  std::size_t constant(bool value, const std::string& cur) {
    PlanNode p;
    p.kind = value ? PlanNode::Kind::True : PlanNode::Kind::False;
    return intern(std::move(p), value ? var_eq(cur, cur) : edge(cur, cur), cur);
  }

  static std::string key_of(const PlanNode& p) {
    std::string k = std::to_string(static_cast<int>(p.kind)) + ":" + std::to_string(p.index);
    for (auto a : p.args) k += "," + std::to_string(a);
    return k;
  }

  std::size_t intern(PlanNode p, const Formula& f, const std::string& cur) {
    const std::string k = key_of(p);
    if (auto it = seen_.find(k); it != seen_.end()) return it->second;
    p.formula = f;
    p.var = cur;
    return add(std::move(p));
  }

  std::size_t add(PlanNode p) {
    const std::size_t id = plan_.nodes.size();
    seen_.emplace(key_of(p), id);
    plan_.nodes.push_back(std::move(p));
    return id;
  }

  SubformulaPlan plan_;
  std::map<std::string, std::size_t> seen_;
};

}  // namespace

SubformulaPlan plan_formula(const Formula& f, std::size_t labels) {
  const auto report = fragment_check(f);
  if (!report.is_gc2)
    throw CompileError("not a GC2 formula: " + report.violation_reason + " at " + report.violation,
                       report.violation);
  const std::string var = f->free.empty() ? "x" : f->free.front();
  Planner p(std::max(labels, max_label(f)));
  const std::size_t root = p.translate(f, var, "");
  return p.finish(root);
}

CompiledGnn compile_formula(const Formula& f, std::size_t labels) {
  CompiledGnn c;
  c.plan = plan_formula(f, labels);
  const std::size_t l = c.plan.labels;
  GnnModel& m = c.model;
  m.input_dim = l;
  m.mode = NumericMode::Rational;
  for (std::size_t pos = l; pos < c.plan.size(); ++pos) {
    const PlanNode& node = c.plan.nodes[pos];
    const std::size_t in = pos;  // l + t - 1 for layer t = pos - l + 1
    Matrix A(in + 1, 2 * in);
    RationalVector b(in + 1, 0);
    for (std::size_t i = 0; i < in; ++i) A(i, i) = 1;
    switch (node.kind) {
      case PlanNode::Kind::True: b[in] = 1; break;
      case PlanNode::Kind::False: break;
      case PlanNode::Kind::Not:
        A(in, node.args[0]) = -1;
        b[in] = 1;
        break;
      case PlanNode::Kind::And:
        for (auto s : node.args) A(in, s) = 1;
        b[in] = -static_cast<long>(node.args.size() - 1);
        break;
      case PlanNode::Kind::Or:
        for (auto s : node.args) A(in, s) = 1;
        break;
      case PlanNode::Kind::Diamond:
        A(in, in + node.args[0]) = 1;
        b[in] = 1 - static_cast<long>(node.index);
        break;
      case PlanNode::Kind::Label: throw CompileError("label atoms must precede operations", "<plan>");
    }
    GnnLayer layer;
    layer.in_dim = in;
    layer.out_dim = in + 1;
    layer.comb = affine_comb(std::move(A), std::move(b), Activation::LSig);
    m.layers.push_back(std::move(layer));
  }
  Matrix r(1, c.plan.size());
  r(0, c.plan.root) = 1;
  m.readout = affine_comb(std::move(r), RationalVector(1, 0), Activation::Identity);
  m.validate();
  return c;
}

Certificate certify(const CompiledGnn& compiled, const std::vector<Graph>& corpus) {
  if (compiled.model.mode != NumericMode::Rational)
    throw ModelError("certification needs an exact rational model");
  Certificate cert;
  cert.graphs = corpus.size();
  cert.vacuous = corpus.empty();
  const auto& plan = compiled.plan;

  struct Local {
    std::size_t vertices = 0, checks = 0;
    std::optional<CertificateFailure> failure;
  };
  std::vector<Local> results(corpus.size());
  auto check_graph = [&](std::size_t gi) {
    const Graph& g = corpus[gi];
    Local& out = results[gi];
    std::vector<std::vector<bool>> truth;
    for (const auto& node : plan.nodes)
      truth.push_back(node.kind == PlanNode::Kind::Label && node.index >= g.label_count()
                          ? std::vector<bool>(g.order(), false)
                          : evaluate_all(node.formula, g, node.var));
    RunOptions ro;
    ro.keep_trace = true;
    const auto res = run(compiled.model, g, ro);
    out.vertices = g.order();
    for (std::size_t t = 0; t < res.trace.size() && !out.failure; ++t)
      for (Vertex v = 0; v < g.order() && !out.failure; ++v)
        for (std::size_t i = 0; i < res.trace[t].dim && !out.failure; ++i) {
          ++out.checks;
          const Rational& z = res.trace[t].exact[v][i];
          const bool want = truth[i][v];
          if (z != (want ? 1 : 0))
            out.failure = CertificateFailure{gi, v, t, i, want, to_string(z), to_sexpr(plan.nodes[i].formula)};
        }
  };
  {
    std::size_t next = 0;
    std::mutex mu;
    std::exception_ptr error;
    auto worker = [&] {
      for (;;) {
        std::size_t gi;
        {
          std::lock_guard lock(mu);
          if (next == corpus.size() || error) return;
          gi = next++;
        }
        try {
          check_graph(gi);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    };
    const std::size_t workers =
        std::min<std::size_t>(corpus.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error) std::rethrow_exception(error);
  }
  for (const auto& r : results) {
    cert.vertices += r.vertices;
    cert.checks += r.checks;
    if (r.failure && !cert.failure) cert.failure = r.failure;
  }
  cert.pass = !cert.failure;
  return cert;
}

}  // namespace wlgnn
