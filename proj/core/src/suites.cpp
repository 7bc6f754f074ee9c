#include "wlgnn/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "wlgnn/atomic_type.hpp"
#include "wlgnn/corpora.hpp"
#include "wlgnn/derived_structure.hpp"
#include "wlgnn/evaluate.hpp"
#include "wlgnn/express.hpp"
#include "wlgnn/formula_pool.hpp"
#include "wlgnn/fragment.hpp"
#include "wlgnn/gc2_compiler.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/iso_oracle.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/rni_triangle.hpp"
#include "wlgnn/sexpr.hpp"
#include "wlgnn/sum_encoder.hpp"
#include "wlgnn/synthesize.hpp"
#include "wlgnn/wl_gnn.hpp"

namespace wlgnn {
namespace {

constexpr std::size_t kMaxCounterexamples = 3;

// Collects property outcomes and counterexamples for one suite run.
class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : r_(r) {}

  PropertyResult& property(const std::string& name, const std::string& claim) {
    for (auto& p : r_.properties)
      if (p.name == name) return p;
    r_.properties.push_back({name, claim, 0, 0});
    return r_.properties.back();
  }

  /// Counts one check; on failure stores the graphs that reproduce it.
  void check(const std::string& name, bool ok, const std::function<std::string()>& describe = {},
             std::vector<Graph> graphs = {}) {
    auto& p = find(name);
    ++p.checked;
    if (ok) return;
    ++p.violations;
    std::size_t kept = 0;
    for (const auto& c : r_.counterexamples) kept += c.property == name;
    if (kept < kMaxCounterexamples)
      r_.counterexamples.push_back({name, describe ? describe() : name, std::move(graphs), {}});
  }

 private:
  PropertyResult& find(const std::string& name) {
    for (auto& p : r_.properties)
      if (p.name == name) return p;
    throw std::logic_error("property " + name + " was not declared");
  }
  SuiteReport& r_;
};

WlOptions fixed(std::size_t rounds, std::size_t budget) {
  WlOptions o;
  o.max_rounds = rounds;
  o.stop_when_stable = false;
  o.tuple_budget = budget;
  return o;
}

WlOptions until_stable(std::size_t budget) {
  WlOptions o;
  o.tuple_budget = budget;
  return o;
}

std::vector<WlRun> pair_run(Algorithm a, std::size_t k, const Graph& g, const Graph& h, const WlOptions& o) {
  const Graph* gs[2] = {&g, &h};
  return run_joint(a, k, std::span<const Graph* const>(gs, 2), o);
}

std::string show(const Graph& g) { return std::to_string(g.order()) + "v/" + std::to_string(g.edge_count()) + "e"; }

// Pairs that are often hard to tell apart: independent draws, relabelled
// copies, equal-degree regular graphs, and degree-preserving edge switches.
std::pair<Graph, Graph> random_pair(Rng& rng, std::size_t n_max, std::size_t labels) {
  const std::size_t kind = uniform_index(rng, 0, 3);
  if (kind == 0 || n_max < 4) return {random_suite_graph(1, n_max, labels, rng), random_suite_graph(1, n_max, labels, rng)};
  const std::size_t n = uniform_index(rng, 4, n_max);
  if (kind == 1) {
    const Graph g = random_suite_graph(n, n, labels, rng);
    return {g, g.permuted(random_permutation(n, rng))};
  }
  if (kind == 2) {
    std::size_t d = uniform_index(rng, 1, n - 2);
    if ((n * d) % 2) --d;
    return {random_regular(n, d, rng()), random_regular(n, d, rng())};
  }
  const Graph g = random_suite_graph(n, n, labels, rng);
  std::vector<Edge> e = g.edges();
  for (int attempt = 0; attempt < 20 && e.size() >= 2; ++attempt) {
    const std::size_t i = uniform_index(rng, 0, e.size() - 1), j = uniform_index(rng, 0, e.size() - 1);
    auto [a, b] = e[i];
    auto [c, d] = e[j];
    if (i == j || a == c || a == d || b == c || b == d) continue;
    if (g.adjacent(a, d) || g.adjacent(c, b)) continue;
    e[i] = {a, d};
    e[j] = {c, b};
    break;
  }
  return {g, Graph(n, g.label_count(), std::move(e), g.label_entries())};
}

std::vector<ColourId> concat_ids(const std::vector<WlRun>& runs, std::size_t t) {
  std::vector<ColourId> ids;
  for (const auto& r : runs) ids.insert(ids.end(), r.at(t).ids.begin(), r.at(t).ids.end());
  return ids;
}

bool same_partition(std::span<const ColourId> a, std::span<const std::uint32_t> b) {
  return equivalent(a, std::span<const ColourId>(b.data(), b.size()));
}

std::vector<std::uint32_t> concat_features(const std::vector<const FeatureMap*>& maps) {
  FeatureMap all;
  all.mode = maps.front()->mode;
  all.dim = maps.front()->dim;
  for (const auto* m : maps) {
    all.exact.insert(all.exact.end(), m->exact.begin(), m->exact.end());
    all.approx.insert(all.approx.end(), m->approx.begin(), m->approx.end());
  }
  return feature_partition(all);
}

// ---------------------------------------------------------------------------

void suite_cr1wl(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("cr-wl1-same-distinguishability",
               "colour refinement and 1-WL distinguish the same graph pairs at every round");
  rec.property("cr-blind-spots", "colour refinement does not separate C6 from 2K3 nor the two 6-vertex graphs with degrees 2,2,2,2,3,3");
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const auto [g, h] = random_pair(rng, s.n, trial % 3 == 0 ? 1 : 0);
    const std::size_t T = 2 * s.n;
    const auto cr = pair_run(Algorithm::ColourRefinement, 1, g, h, fixed(T, s.budget));
    const auto w1 = pair_run(Algorithm::WL, 1, g, h, fixed(T, s.budget));
    bool ok = true;
    std::size_t bad_t = 0;
    for (std::size_t t = 0; t <= T && ok; ++t) {
      ok = distinguishes_graphs(cr[0], cr[1], t) == distinguishes_graphs(w1[0], w1[1], t);
      bad_t = t;
    }
    rec.check("cr-wl1-same-distinguishability", ok,
              [&] { return "round " + std::to_string(bad_t) + " on " + show(g) + " vs " + show(h); }, {g, h});
  }
  const auto [a, b] = chorded_hexagon_pair();
  const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
  for (const auto& [g, h] : {std::pair{a, b}, std::pair{c6, tt}}) {
    const auto r = pair_run(Algorithm::ColourRefinement, 1, g, h, until_stable(s.budget));
    bool same = true;
    for (std::size_t t = 0; t <= r[0].last_round(); ++t) same = same && !distinguishes_graphs(r[0], r[1], t);
    rec.check("cr-blind-spots", same, [&] { return "separated " + show(g) + " from " + show(h); }, {g, h});
  }
}

void suite_owl_sandwich(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("owl-sandwich",
               "wl_k^t distinguishes => owl_{k+1}^t distinguishes => wl_k^{t+1} distinguishes (k = 1, 2)");
  rec.property("owl-stable-equivalence", "stable wl_k and owl_{k+1} distinguish the same pairs (k = 1, 2)");
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const auto [g, h] = random_pair(rng, s.n, trial % 4 == 0 ? 1 : 0);
    for (std::size_t k = 1; k <= 2; ++k) {
      const std::size_t T = 2 * s.n;
      const auto w = pair_run(Algorithm::WL, k, g, h, fixed(T + 1, s.budget));
      const auto o = pair_run(Algorithm::OWL, k + 1, g, h, fixed(T, s.budget));
      bool ok = true;
      std::size_t bad = 0;
      for (std::size_t t = 0; t <= T && ok; ++t) {
        const bool dw = distinguishes_graphs(w[0], w[1], t), dow = distinguishes_graphs(o[0], o[1], t),
                   dw1 = distinguishes_graphs(w[0], w[1], t + 1);
        ok = (!dw || dow) && (!dow || dw1);
        bad = t;
      }
      rec.check("owl-sandwich", ok,
                [&] { return "k=" + std::to_string(k) + " round " + std::to_string(bad); }, {g, h});
      const auto ws = pair_run(Algorithm::WL, k, g, h, until_stable(s.budget));
      const auto os = pair_run(Algorithm::OWL, k + 1, g, h, until_stable(s.budget));
      rec.check("owl-stable-equivalence",
                distinguishes_graphs(ws[0], ws[1], ws[0].last_round()) ==
                    distinguishes_graphs(os[0], os[1], os[0].last_round()),
                [&] { return "k=" + std::to_string(k); }, {g, h});
    }
  }
}

void suite_lemma_owl(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("owl-biconditional",
               "owl_{k+1}^t colours of tuples agree iff their atomic types agree and wl_k^t agrees on every deletion");
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const auto [g, h] = random_pair(rng, s.n, trial % 4 == 0 ? 1 : 0);
    const Graph* gs[2] = {&g, &h};
    for (std::size_t k = 1; k <= 2; ++k) {
      const std::size_t T = s.n + 1;
      const auto o = pair_run(Algorithm::OWL, k + 1, g, h, fixed(T, s.budget));
      const auto w = pair_run(Algorithm::WL, k, g, h, fixed(T, s.budget));
      bool ok = true;
      std::size_t bad = 0;
      for (std::size_t t = 0; t <= T && ok; ++t) {
        // Both sides as partitions of all (k+1)-tuples of both graphs.
        std::map<std::vector<std::uint64_t>, ColourId> key_to_owl;
        std::map<ColourId, std::vector<std::uint64_t>> owl_to_key;
        for (std::size_t side = 0; side < 2 && ok; ++side) {
          const Colouring& oc = o[side].at(t);
          for (std::size_t idx = 0; idx < oc.tuple_count() && ok; ++idx) {
            const auto tup = oc.tuple(idx);
            const auto atp = atomic_type(*gs[side], tup);
            std::vector<std::uint64_t> key(atp.bits.begin(), atp.bits.end());
            for (std::size_t i = 0; i <= k; ++i) {
              std::vector<Vertex> del;
              for (std::size_t j = 0; j <= k; ++j)
                if (j != i) del.push_back(tup[j]);
              key.push_back(w[side].at(t).at(del));
            }
            const ColourId c = oc.ids[idx];
            auto [it, fresh] = key_to_owl.emplace(key, c);
            auto [jt, fresh2] = owl_to_key.emplace(c, key);
            ok = it->second == c && jt->second == key;
          }
        }
        bad = t;
      }
      rec.check("owl-biconditional", ok,
                [&] { return "k=" + std::to_string(k) + " round " + std::to_string(bad); }, {g, h});
    }
  }
}

void suite_ag_equivalence(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("owl2-equals-wl1-on-derived", "per graph, owl_2^t and wl_1^t on A_G induce the same tuple partition");
  rec.property("owl2-equals-typed-cr-on-derived",
               "across graphs, owl_2^t colours agree iff relation-typed colour refinement on A_G agrees");
  const std::size_t T = 4;
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const Graph g = random_suite_graph(1, s.n, trial % 3 == 0 ? 1 : 0, rng);
    const Graph h = trial % 2 ? g.permuted(random_permutation(g.order(), rng))
                              : random_suite_graph(1, s.n, g.label_count(), rng);
    const BinaryStructure ag = derived_structure(g, 2, s.budget), ah = derived_structure(h, 2, s.budget);
    const auto og = owl(g, 2, fixed(T, s.budget));
    const auto wg = wl(ag, 1, fixed(T, s.budget));
    bool ok = true;
    for (std::size_t t = 0; t <= T; ++t)
      ok = ok && equivalent(std::span<const ColourId>(og.at(t).ids), std::span<const ColourId>(wg.at(t).ids));
    rec.check("owl2-equals-wl1-on-derived", ok, [&] { return "graph " + show(g); }, {g});

    const auto o = pair_run(Algorithm::OWL, 2, g, h, fixed(T, s.budget));
    const BinaryStructure* as[2] = {&ag, &ah};
    const auto c = run_joint(Algorithm::ColourRefinement, 1, std::span<const BinaryStructure* const>(as, 2),
                             fixed(T, s.budget));
    bool ok2 = true;
    for (std::size_t t = 0; t <= T; ++t) {
      const auto a = concat_ids(o, t), b = concat_ids(c, t);
      ok2 = ok2 && equivalent(std::span<const ColourId>(a), std::span<const ColourId>(b));
    }
    rec.check("owl2-equals-typed-cr-on-derived", ok2, [&] { return show(g) + " vs " + show(h); }, {g, h});
  }
}

void suite_sum_lemma(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("sum-below-min", "every multiset of order < m sums below min X");
  rec.property("sum-injective", "distinct multisets of order < m have distinct sums");
  auto random_domain = [&](std::size_t size) {
    std::set<Rational> xs;
    while (xs.size() < size) {
      const std::size_t den = uniform_index(rng, 2, 200);
      Rational q(static_cast<unsigned long>(uniform_index(rng, 1, den - 1)), static_cast<unsigned long>(den));
      q.canonicalize();
      xs.insert(q);
    }
    std::vector<Rational> v(xs.begin(), xs.end());
    std::shuffle(v.begin(), v.end(), rng);
    return v;
  };
  // Exhaustive: every multiset of order <= m-1 over |X| <= 4, m <= 5.
  for (unsigned long m = 2; m <= 5; ++m)
    for (std::size_t size = 1; size <= 4; ++size)
      for (std::size_t rep = 0; rep < std::max<std::size_t>(1, s.trials / 100); ++rep) {
        const auto enc = build_sum_encoder(m, random_domain(size));
        std::vector<std::size_t> counts(size, 0);
        std::map<Rational, std::vector<std::size_t>> seen;
        std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t pos, std::size_t left) {
          if (pos == size) {
            const Rational sum = enc.sum(counts);
            rec.check("sum-below-min", sum < enc.min_x(), [&] { return "m=" + std::to_string(m); });
            auto [it, fresh] = seen.emplace(sum, counts);
            rec.check("sum-injective", fresh, [&] { return "collision at m=" + std::to_string(m); });
            return;
          }
          for (std::size_t c = 0; c <= left; ++c) {
            counts[pos] = c;
            walk(pos + 1, left - c);
          }
          counts[pos] = 0;
        };
        walk(0, m - 1);
      }
  // Sampled: larger m and X, random multisets and random collision search.
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const unsigned long m = uniform_index(rng, 2, 16);
    const std::size_t size = uniform_index(rng, 1, 8);
    const auto enc = build_sum_encoder(m, random_domain(size));
    auto sample = [&] {
      std::vector<std::size_t> c(size, 0);
      const std::size_t order = uniform_index(rng, 0, m - 1);
      for (std::size_t i = 0; i < order; ++i) ++c[uniform_index(rng, 0, size - 1)];
      return c;
    };
    const auto a = sample(), b = sample();
    rec.check("sum-below-min", enc.sum(a) < enc.min_x());
    if (a != b) rec.check("sum-injective", enc.sum(a) != enc.sum(b));
  }
}

void suite_gnn_upper(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("gnn-never-splits-cr", "random-weight d-layer rational GNNs give equal outputs to vertices with equal colref^d colours");
  rec.property("gnn-never-splits-cr-float", "the same holds for float64 models with sigmoid activations");
  rec.property("aggregate-readout-blind", "random-weight GNNs with aggregate readout give C6 and 2K3 the same output");
  const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
  auto never_splits = [&](const GnnModel& m, const Graph& g, const Graph& h, std::size_t d) {
    const auto cr = pair_run(Algorithm::ColourRefinement, 1, g, h, fixed(d, s.budget));
    const auto a = run(m, g).vertex_output, b = run(m, h).vertex_output;
    const auto& cg = cr[0].at(d).ids;
    const auto& ch = cr[1].at(d).ids;
    for (Vertex v = 0; v < g.order(); ++v)
      for (Vertex w = 0; w < h.order(); ++w)
        if (cg[v] == ch[w] && (a.mode == NumericMode::Rational ? a.exact[v] != b.exact[w] : a.approx[v] != b.approx[w]))
          return false;
    return true;
  };
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const auto [g, h] = random_pair(rng, s.n, trial % 2);
    RandomModelOptions mo;
    mo.input_dim = std::max<std::size_t>(g.label_count(), 1);
    mo.depth = 1 + trial % 4;
    mo.hidden = 2 + trial % 3;
    mo.activation = trial % 2 ? Activation::LSig : Activation::ReLU;
    mo.aggregate_readout = true;
    const GnnModel m = random_model(mo, rng());
    rec.check("gnn-never-splits-cr", never_splits(m, g, h, mo.depth),
              [&] { return "depth " + std::to_string(mo.depth); }, {g, h});
    const auto x = run(m, c6), y = run(m, tt);
    rec.check("aggregate-readout-blind", x.graph_output_exact == y.graph_output_exact);
    if (trial % 4 == 3) {
      mo.mode = NumericMode::Float64;
      mo.activation = Activation::Sig;
      const GnnModel f = random_model(mo, rng());
      rec.check("gnn-never-splits-cr-float", never_splits(f, g, h, mo.depth),
                [&] { return "depth " + std::to_string(mo.depth); }, {g, h});
    }
  }
}

void suite_gnn_lower(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("wl-gnn-equals-cr", "the constructed recurrent GNN's round-t partition equals colref^t, jointly over the corpus");
  rec.property("wl1-gnn-matches-wl1", "the global-readout construction matches wl^1 per graph and refines it across pairs");
  rec.property("round-confinement", "every round-t value lies on the round-t grid (checked while running)");
  const std::size_t labels = 1;
  std::vector<Graph> corpus;
  for (std::size_t i = 0; i < s.trials; ++i) corpus.push_back(random_suite_graph(1, s.n, labels, rng));
  GnnModel model = build_wl_gnn(s.n, labels);
  model.iter = {IterPolicy::Kind::Constant, s.n};
  std::vector<RunResult> res;
  RunOptions ro;
  ro.keep_trace = true;
  for (const auto& g : corpus) {
    try {
      res.push_back(run(model, g, ro));
      rec.check("round-confinement", true);
    } catch (const ModelError& e) {
      rec.check("round-confinement", false, [&] { return std::string(e.what()); }, {g});
      return;
    }
  }
  std::vector<const Graph*> ptrs;
  for (const auto& g : corpus) ptrs.push_back(&g);
  const auto cr = run_joint(Algorithm::ColourRefinement, 1, std::span<const Graph* const>(ptrs), fixed(s.n, s.budget));
  for (std::size_t t = 0; t <= s.n; ++t) {
    std::vector<const FeatureMap*> maps;
    for (const auto& r : res) maps.push_back(&r.trace[t]);
    const auto ids = concat_ids(cr, t);
    rec.check("wl-gnn-equals-cr", same_partition(ids, concat_features(maps)),
              [&] { return "round " + std::to_string(t); });
  }

  const std::size_t n1 = std::min<std::size_t>(s.n, 6);
  GnnModel global = build_wl1_gnn(n1, labels);
  global.iter = {IterPolicy::Kind::Constant, n1};
  for (std::size_t trial = 0; trial < std::max<std::size_t>(1, s.trials / 5); ++trial) {
    const Graph g = random_suite_graph(1, n1, labels, rng), h = random_suite_graph(1, n1, labels, rng);
    const auto a = run(global, g, ro), b = run(global, h, ro);
    const auto w = pair_run(Algorithm::WL, 1, g, h, fixed(n1, s.budget));
    const auto single = wl(g, 1, fixed(n1, s.budget));
    bool ok = true;
    for (std::size_t t = 0; t <= n1; ++t) {
      ok = ok && same_partition(single.at(t).ids, feature_partition(a.trace[t]));
      const auto joint = concat_features({&a.trace[t], &b.trace[t]});
      const auto ids = concat_ids(w, t);
      ok = ok && refines(std::span<const ColourId>(joint.data(), joint.size()), std::span<const ColourId>(ids));
    }
    rec.check("wl1-gnn-matches-wl1", ok, [&] { return show(g) + " vs " + show(h); }, {g, h});
  }
}

void suite_cr_logic(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("synthesized-separator-sound",
               "for colref^t-different vertices the synthesized formula is guarded, 2-variable, rank <= t and separates them");
  rec.property("pool-respects-cr-classes", "no pool formula of rank <= t separates colref^t-equal vertices");
  std::vector<Formula> pool = seed_gc2_formulas(1);
  while (pool.size() < 200) pool.push_back(random_gc2_formula(rng, "x", 3, 1, 3));
  std::size_t separated = 0;
  for (std::size_t trial = 0; separated < s.trials && trial < 20 * s.trials; ++trial) {
    const std::size_t labels = trial % 2;
    const auto [g, h] = random_pair(rng, s.n, labels);
    const std::size_t t = uniform_index(rng, 1, 4);
    const auto cr = pair_run(Algorithm::ColourRefinement, 1, g, h, fixed(t, s.budget));
    const auto& cg = cr[0].at(t).ids;
    const auto& ch = cr[1].at(t).ids;
    std::vector<std::pair<Vertex, Vertex>> diff, same;
    for (Vertex v = 0; v < g.order(); ++v)
      for (Vertex w = 0; w < h.order(); ++w) (cg[v] != ch[w] ? diff : same).emplace_back(v, w);
    if (!diff.empty()) {
      const auto [v, w] = diff[uniform_index(rng, 0, diff.size() - 1)];
      const auto r = synthesize_distinguishing_formula(g, v, h, w, t);
      bool ok = r.distinguished && r.formula;
      if (ok) {
        const auto rep = fragment_check(r.formula);
        ok = rep.is_guarded && rep.variable_count <= 2 && r.rank <= t &&
             evaluate(r.formula, g, {{"x", v}}) && !evaluate(r.formula, h, {{"x", w}});
      }
      rec.check("synthesized-separator-sound", ok,
                [&] { return "v=" + std::to_string(v + 1) + " w=" + std::to_string(w + 1) + " t=" + std::to_string(t); }, {g, h});
      ++separated;
    }
    if (!same.empty() && trial % 2 == 0) {
      const auto [v, w] = same[uniform_index(rng, 0, same.size() - 1)];
      bool ok = true;
      std::string culprit;
      for (const auto& f : pool) {
        if (f->rank > t) continue;
        if (evaluate(f, g, {{"x", v}}) != evaluate(f, h, {{"x", w}})) {
          ok = false;
          culprit = to_sexpr(f);
          break;
        }
      }
      rec.check("pool-respects-cr-classes", ok, [&] { return culprit; }, {g, h});
    }
  }
}

void suite_compile_exact(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("compiled-equals-evaluator", "every layer of a compiled formula holds exactly the truth values of its plan entries");
  rec.property("margins-exact", "compiled outputs are exactly 0 or 1, so every epsilon < 1/2 works");
  std::vector<Formula> formulas{example_busy_neighbour_formula()};
  for (const auto& f : seed_gc2_formulas(1)) formulas.push_back(f);
  while (formulas.size() < std::max<std::size_t>(s.trials, 20)) formulas.push_back(random_gc2_formula(rng, "x", 3, 1, 3));
  const auto corpus = certification_corpus(std::max<std::size_t>(s.n, 16), s.seed);
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    auto c = compile_formula(formulas[i], 1);
    if (s.inject_fault && i == 0) std::get<AffineStage>(c.model.layers[0].comb.stages[0]).b.back() += 1;
    const auto cert = certify(c, corpus);
    std::vector<Graph> witness;
    if (cert.failure) witness.push_back(corpus[cert.failure->graph]);
    rec.check("compiled-equals-evaluator", cert.pass, [&] {
      const auto& f = *cert.failure;
      return to_sexpr(formulas[i]) + ": vertex " + std::to_string(f.vertex + 1) + " layer " + std::to_string(f.layer) +
             " entry " + f.subformula + " expected " + (f.expected ? "1" : "0") + " got " + f.got;
    }, witness);
    std::vector<QueryCase> cases;
    for (const auto& g : corpus) cases.push_back({g, evaluate_all(formulas[i], g, "x")});
    const auto rep = expresses_query_check(c.model, cases, ExpressOptions{0.49, 1, s.seed, 0.05});
    bool exact = rep.expresses;
    for (const auto& v : rep.vertices) exact = exact && v.exact_output && (*v.exact_output == 0 || *v.exact_output == 1);
    rec.check("margins-exact", exact, [&] { return to_sexpr(formulas[i]); });
  }
}

void suite_kgnn(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("kgnn-never-splits-owl", "random-weight 3-layer 2-GNNs never split an owl_2^3 class");
  rec.property("constructive-kgnn-equals-owl", "the constructed 2-GNN's round-t tuple partition equals owl_2^t");
  rec.property("kgnn-equivariance", "permuting the graph permutes k-GNN tuple outputs");
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    const Graph g = random_suite_graph(1, s.n, 0, rng);
    RandomModelOptions mo;
    mo.input_dim = 4;
    mo.depth = 3;
    mo.relations = 2;
    const GnnModel m = random_model(mo, rng());
    const auto chi = owl(g, 2, fixed(3, s.budget)).at(3);
    const auto out = run_kgnn(m, g, 2).vertex_output;
    const auto part = feature_partition(out);
    rec.check("kgnn-never-splits-owl",
              refines(std::span<const ColourId>(chi.ids), std::span<const ColourId>(part.data(), part.size())),
              [&] { return show(g); }, {g});

    const auto perm = random_permutation(g.order(), rng);
    const auto moved = run_kgnn(m, g.permuted(perm), 2).vertex_output;
    bool eq = true;
    const std::size_t n = g.order();
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = 0; b < n; ++b) eq = eq && out.exact[a * n + b] == moved.exact[perm[a] * n + perm[b]];
    rec.check("kgnn-equivariance", eq, [&] { return show(g); }, {g});
  }
  const std::size_t small = std::min<std::size_t>(s.n, 5);
  for (std::size_t trial = 0; trial < std::max<std::size_t>(1, s.trials / 5); ++trial) {
    const Graph g = random_suite_graph(1, small, trial % 2, rng);
    const std::size_t rounds = 4;
    GnnModel m = build_kgnn_wl(small, 2, g.label_count(), rounds);
    RunOptions ro;
    ro.keep_trace = true;
    const auto r = run_kgnn(m, g, 2, ro);
    const auto o = owl(g, 2, fixed(rounds, s.budget));
    bool ok = true;
    for (std::size_t t = 0; t <= rounds; ++t) ok = ok && same_partition(o.at(t).ids, feature_partition(r.trace[t]));
    rec.check("constructive-kgnn-equals-owl", ok, [&] { return show(g); }, {g});
  }
}

void suite_rni(const SuiteSpec& s, Recorder& rec, Rng& rng) {
  rec.property("rni-triangle-delta", "the RNI triangle model is right on every vertex of C6 and 2K3 in more than 95% of trials");
  rec.property("rni-coupled-equivariance", "permuting graph and draws together permutes the outputs exactly");
  rec.property("rni-equivariance-in-distribution", "per-vertex success rates on G and on a permuted copy agree within sampling error");
  const auto model = build_rni_triangle_model();
  const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
  std::vector<QueryCase> cases{{c6, std::vector<bool>(6, false)}, {tt, std::vector<bool>(6, true)}};
  ExpressOptions eo;
  eo.epsilon = 0.25;
  eo.trials = s.trials;
  eo.seed = s.seed;
  const auto rep = expresses_query_check(model, cases, eo);
  rec.check("rni-triangle-delta", rep.delta_hat < 0.05, [&] {
    return "delta-hat " + std::to_string(rep.delta_hat) + " over " + std::to_string(rep.trials) + " trials";
  }, {c6, tt});

  // Triangle with a tail, plus a 4-cycle: members are the triangle vertices.
  const Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {4, 5}, {5, 6}, {3, 4}});
  const std::vector<bool> members{true, true, true, false, false, false, false};
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const auto perm = random_permutation(g.order(), rng);
    const auto d = rni_draws(g.order(), 1, rng());
    const auto pd = permute_draws(d, perm);
    RunOptions a, b;
    a.draws = &d;
    b.draws = &pd;
    const auto x = run(model, g, a).vertex_output, y = run(model, g.permuted(perm), b).vertex_output;
    bool ok = true;
    for (Vertex v = 0; v < g.order(); ++v) ok = ok && x.exact[v] == y.exact[perm[v]];
    rec.check("rni-coupled-equivariance", ok, {}, {g});
  }
  const auto perm = random_permutation(g.order(), rng);
  const Graph pg = g.permuted(perm);
  std::vector<bool> pmembers(g.order());
  for (Vertex v = 0; v < g.order(); ++v) pmembers[perm[v]] = members[v];
  ExpressOptions e1 = eo, e2 = eo;
  e2.seed = s.seed ^ 0x5bd1e995u;
  const auto r1 = expresses_query_check(model, {{g, members}}, e1);
  const auto r2 = expresses_query_check(model, {{pg, pmembers}}, e2);
  for (Vertex v = 0; v < g.order(); ++v) {
    const double p = r1.vertices[v].success_rate, q = r2.vertices[perm[v]].success_rate;
    const double pooled = (p + q) / 2;
    const double se = std::sqrt(std::max(pooled * (1 - pooled), 1e-4) * 2.0 / static_cast<double>(s.trials));
    rec.check("rni-equivariance-in-distribution", std::abs(p - q) <= 4.0 * se + 1e-12,
              [&] { return "vertex " + std::to_string(v + 1) + ": " + std::to_string(p) + " vs " + std::to_string(q); }, {g});
  }
}

void suite_srg(const SuiteSpec& s, Recorder& rec, Rng&) {
  rec.property("srg-non-isomorphic", "the 4x4 rook's graph and the Shrikhande graph are not isomorphic");
  rec.property("srg-wl2-blind", "stable wl_2 hat multisets of the two graphs are equal at every round");
  rec.property("srg-owl3-blind", "stable owl_3 hat multisets of the two graphs are equal");
  const Graph a = rook4x4(), b = shrikhande();
  IsoOptions io;
  io.invariant_pruning = true;
  rec.check("srg-non-isomorphic", !oracle_isomorphic(a, b, io).isomorphic, {}, {a, b});
  const auto w = pair_run(Algorithm::WL, 2, a, b, until_stable(s.budget));
  bool same = true;
  for (std::size_t t = 0; t <= w[0].last_round(); ++t) same = same && !distinguishes_graphs(w[0], w[1], t);
  rec.check("srg-wl2-blind", same, {}, {a, b});
  const auto o = pair_run(Algorithm::OWL, 3, a, b, until_stable(s.budget));
  rec.check("srg-owl3-blind", !distinguishes_graphs(o[0], o[1], o[0].last_round()), {}, {a, b});
}

using SuiteFn = void (*)(const SuiteSpec&, Recorder&, Rng&);

struct Entry {
  SuiteInfo info;
  SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {{"cr1wl", "colour refinement vs 1-WL graph distinguishability", 8, 1000}, suite_cr1wl},
      {{"owl-sandwich", "wl_k / owl_{k+1} round sandwich and stable equivalence", 7, 500}, suite_owl_sandwich},
      {{"lemma-owl", "owl_{k+1} colours from atomic types and wl_k deletions", 6, 500}, suite_lemma_owl},
      {{"ag-equivalence", "owl_2 on G vs refinement on the derived structure A_G", 6, 200}, suite_ag_equivalence},
      {{"sum-lemma", "injective multiset sums of the power encoding", 0, 1000}, suite_sum_lemma},
      {{"gnn-upper", "random GNNs cannot beat colour refinement", 7, 100}, suite_gnn_upper},
      {{"gnn-lower", "constructed recurrent GNNs match colour refinement and wl^1", 8, 300}, suite_gnn_lower},
      {{"cr-logic-synth", "separating guarded formulas and a formula pool", 8, 500}, suite_cr_logic},
      {{"compile-exact", "GC2 compiler certified against the evaluator", 50, 20}, suite_compile_exact},
      {{"kgnn", "k-GNNs on A_G vs oblivious 2-WL", 6, 200}, suite_kgnn},
      {{"rni-triangle", "random node initialisation triangle model", 0, 200}, suite_rni},
      {{"srg-pair", "two strongly regular graphs that 2-WL cannot tell apart", 16, 1}, suite_srg},
  };
  return r;
}

}  // namespace

std::string status_name(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::Skipped: return "skipped";
  }
  return "?";
}

const std::vector<SuiteInfo>& suite_catalogue() {
  static const std::vector<SuiteInfo> c = [] {
    std::vector<SuiteInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return c;
}

const std::vector<ManifestEntry>& property_manifest() {
  static const std::vector<ManifestEntry> m{
      {"cr-wl1-same-distinguishability", "cr1wl"},
      {"cr-blind-spots", "cr1wl"},
      {"owl-sandwich", "owl-sandwich"},
      {"owl-stable-equivalence", "owl-sandwich"},
      {"owl-biconditional", "lemma-owl"},
      {"owl2-equals-wl1-on-derived", "ag-equivalence"},
      {"owl2-equals-typed-cr-on-derived", "ag-equivalence"},
      {"sum-below-min", "sum-lemma"},
      {"sum-injective", "sum-lemma"},
      {"gnn-never-splits-cr", "gnn-upper"},
      {"gnn-never-splits-cr-float", "gnn-upper"},
      {"aggregate-readout-blind", "gnn-upper"},
      {"wl-gnn-equals-cr", "gnn-lower"},
      {"wl1-gnn-matches-wl1", "gnn-lower"},
      {"round-confinement", "gnn-lower"},
      {"synthesized-separator-sound", "cr-logic-synth"},
      {"pool-respects-cr-classes", "cr-logic-synth"},
      {"compiled-equals-evaluator", "compile-exact"},
      {"margins-exact", "compile-exact"},
      {"kgnn-never-splits-owl", "kgnn"},
      {"constructive-kgnn-equals-owl", "kgnn"},
      {"kgnn-equivariance", "kgnn"},
      {"rni-triangle-delta", "rni-triangle"},
      {"rni-coupled-equivariance", "rni-triangle"},
      {"rni-equivariance-in-distribution", "rni-triangle"},
      {"srg-non-isomorphic", "srg-pair"},
      {"srg-wl2-blind", "srg-pair"},
      {"srg-owl3-blind", "srg-pair"},
  };
  return m;
}

SuiteReport run_suite(const SuiteSpec& spec) {
  const Entry* entry = nullptr;
  for (const auto& e : registry())
    if (e.info.id == spec.id) entry = &e;
  if (!entry) throw std::invalid_argument("unknown suite '" + spec.id + "'");
  if (spec.inject_fault && spec.id != "compile-exact")
    throw std::invalid_argument("suite '" + spec.id + "' has no fault injection");

  SuiteSpec s = spec;
  if (s.n == 0) s.n = entry->info.default_n;
  if (s.trials == 0) s.trials = entry->info.default_trials;

  SuiteReport rep;
  rep.id = s.id;
  rep.n = s.n;
  rep.trials = s.trials;
  rep.seed = s.seed;
  rep.repro = "wlgnn verify --suite " + s.id + " --n " + std::to_string(s.n) + " --trials " +
              std::to_string(s.trials) + " --seed " + std::to_string(s.seed) + (s.inject_fault ? " --inject-fault" : "");
  const auto start = std::chrono::steady_clock::now();
  Recorder rec(rep);
  Rng rng(s.seed);
  try {
    entry->fn(s, rec, rng);
    bool failed = false;
    for (const auto& p : rep.properties) failed = failed || p.violations > 0;
    rep.status = failed ? SuiteStatus::Fail : SuiteStatus::Pass;
  } catch (const BudgetExceeded& e) {
    rep.status = SuiteStatus::Skipped;
    rep.skip_reason = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (s.dump_dir && !rep.counterexamples.empty()) {
    std::filesystem::create_directories(*s.dump_dir);
    for (std::size_t i = 0; i < rep.counterexamples.size(); ++i) {
      auto& c = rep.counterexamples[i];
      for (std::size_t j = 0; j < c.graphs.size(); ++j) {
        const auto path = *s.dump_dir / (s.id + "-seed" + std::to_string(s.seed) + "-" + std::to_string(i) + "-" +
                                         std::to_string(j) + ".gr");
        write_graph_file(c.graphs[j], path);
        c.files.push_back(path.string());
      }
    }
  }
  return rep;
}

std::vector<SuiteReport> run_suites(const std::vector<SuiteSpec>& specs) {
  std::vector<SuiteReport> out(specs.size());
  std::vector<std::exception_ptr> errors(specs.size());
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == specs.size()) return;
        i = next++;
      }
      try {
        out[i] = run_suite(specs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t workers = std::min<std::size_t>(specs.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace wlgnn
