// Acceptance runner. With no argument every criterion runs; with a number only
// that one runs. Each prints a single "criterion N: PASS|FAIL ..." line.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "wlgnn/colouring.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/iso_oracle.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/refinement_fast.hpp"
#include "wlgnn/suites.hpp"
#include "wlgnn/wl.hpp"

using namespace wlgnn;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail << (detail.tellp() ? "; " : "") << what << (ok ? " ok" : " FAILED");
  }
};

SuiteReport suite(const std::string& id, std::size_t n, std::size_t trials, std::uint64_t seed = 1) {
  SuiteSpec s;
  s.id = id;
  s.n = n;
  s.trials = trials;
  s.seed = seed;
  s.dump_dir = std::filesystem::path("acceptance-counterexamples");
  return run_suite(s);
}

// Every listed property was checked at least `min_checks` times and never violated.
void require_properties(Outcome& o, const SuiteReport& r, std::initializer_list<std::string> names,
                        std::size_t min_checks) {
  o.require(r.status != SuiteStatus::Skipped, r.id + " ran" + (r.skip_reason.empty() ? "" : " (" + r.skip_reason + ")"));
  for (const auto& name : names) {
    const PropertyResult* p = nullptr;
    for (const auto& q : r.properties)
      if (q.name == name) p = &q;
    if (!p) {
      o.require(false, name + " missing");
      continue;
    }
    o.require(p->checked >= min_checks && p->violations == 0,
              name + " " + std::to_string(p->checked) + " checks/" + std::to_string(p->violations) + " violations");
  }
  for (const auto& c : r.counterexamples) o.detail << "; counterexample: " << c.description;
}

bool stable_distinguishes(Algorithm a, std::size_t k, const Graph& g, const Graph& h) {
  return distinguishes_graphs(a, k, g, h);
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
  const auto [chorded, triangles] = chorded_hexagon_pair();
  o.require(!stable_distinguishes(Algorithm::ColourRefinement, 1, c6, tt), "colref C6 vs 2K3 equal");
  o.require(!stable_distinguishes(Algorithm::ColourRefinement, 1, chorded, triangles), "colref hexagon-with-chord pair equal");
  bool owl_sep = false;
  for (std::size_t t = 0; t <= 3; ++t) owl_sep = owl_sep || distinguishes_graphs(Algorithm::OWL, 2, c6, tt, t);
  o.require(owl_sep, "owl2 separates C6 from 2K3 by round 3");
  const double s = since(t0);
  o.require(s < 1.0, "runtime " + std::to_string(s) + "s < 1s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const Graph a = rook4x4(), b = shrikhande();
  o.require(!stable_distinguishes(Algorithm::WL, 2, a, b), "stable wl2 hats equal");
  IsoOptions io;
  io.invariant_pruning = true;
  o.require(!oracle_isomorphic(a, b, io).isomorphic, "oracle says non-isomorphic");
  const double s = since(t0);
  o.require(s < 60.0, "runtime " + std::to_string(s) + "s < 60s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  require_properties(o, suite("cr1wl", 8, 1000), {"cr-wl1-same-distinguishability"}, 1000);
  return o;
}

Outcome criterion4() {
  Outcome o;
  require_properties(o, suite("owl-sandwich", 6, 500), {"owl-sandwich"}, 1000);
  require_properties(o, suite("lemma-owl", 6, 500), {"owl-biconditional"}, 1000);
  return o;
}

Outcome criterion5() {
  Outcome o;
  require_properties(o, suite("ag-equivalence", 6, 200), {"owl2-equals-wl1-on-derived", "owl2-equals-typed-cr-on-derived"}, 200);
  return o;
}

Outcome criterion6() {
  Outcome o;
  require_properties(o, suite("sum-lemma", 0, 1000), {"sum-injective", "sum-below-min"}, 1000);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = suite("gnn-lower", 8, 300);
  const double s = since(t0);
  // One joint check per round t = 0..8 over the whole corpus.
  require_properties(o, r, {"wl-gnn-equals-cr"}, 9);
  require_properties(o, r, {"round-confinement"}, 300);
  o.require(s < 120.0, "runtime " + std::to_string(s) + "s < 120s");
  return o;
}

Outcome criterion8() {
  Outcome o;
  require_properties(o, suite("gnn-upper", 7, 100), {"gnn-never-splits-cr"}, 100);
  return o;
}

Outcome criterion9() {
  Outcome o;
  require_properties(o, suite("compile-exact", 50, 20), {"compiled-equals-evaluator", "margins-exact"}, 20);
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto r = suite("cr-logic-synth", 8, 500);
  require_properties(o, r, {"synthesized-separator-sound"}, 500);
  require_properties(o, r, {"pool-respects-cr-classes"}, 100);
  return o;
}

// G(n, m): exactly m distinct edges drawn uniformly.
Graph gnm(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::set<Edge> edges;
  while (edges.size() < m) {
    Vertex a = static_cast<Vertex>(uniform_index(rng, 0, n - 1)), b = static_cast<Vertex>(uniform_index(rng, 0, n - 1));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.insert({a, b});
  }
  return Graph::from_edges(n, {edges.begin(), edges.end()});
}

Outcome criterion11() {
  Outcome o;
  const Graph big = gnm(100000, 500000, 11);
  const auto t0 = Clock::now();
  const auto p = colour_refinement_fast(big);
  const double s = since(t0);
  o.require(s < 5.0, "fast colref on 1e5 vertices / 5e5 edges in " + std::to_string(s) + "s (" +
                         std::to_string(p.class_count) + " classes) < 5s");

  std::vector<Graph> instances;
  for (const auto& e : std::filesystem::directory_iterator(WLGNN_CORPUS_DIR))
    if (e.path().extension() == ".gr") instances.push_back(read_graph_file(e.path()));
  Rng rng(64);
  for (std::size_t i = 0; i < 300; ++i) instances.push_back(random_suite_graph(1, 64, i % 3 == 0 ? 2 : 0, rng));
  std::size_t mismatches = 0;
  for (const auto& g : instances) {
    const auto fast = colour_refinement_fast(g);
    const auto naive = colour_refinement(g);
    const auto& ids = naive.final().ids;
    if (!equivalent(std::span<const ColourId>(fast.class_of.data(), fast.class_of.size()), std::span<const ColourId>(ids)))
      ++mismatches;
  }
  o.require(mismatches == 0, "fast equals naive on " + std::to_string(instances.size()) + " instances with n <= 64");
  return o;
}

Outcome criterion12() {
  Outcome o;
  require_properties(o, suite("rni-triangle", 0, 200), {"rni-triangle-delta", "rni-equivariance-in-distribution"}, 1);
  return o;
}

const std::vector<std::function<Outcome()>> kCriteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11, criterion12};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(kCriteria.size())) {
      std::cerr << "usage: " << argv[0] << " [1-" << kCriteria.size() << "]\n";
      return 2;
    }
    which.push_back(static_cast<std::size_t>(n));
  } else {
    for (std::size_t i = 1; i <= kCriteria.size(); ++i) which.push_back(i);
  }
  bool all = true;
  for (auto i : which) {
    Outcome o;
    try {
      o = kCriteria[i - 1]();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << ")" << std::endl;
  }
  return all ? 0 : 1;
}
