#include "doctest.h"
#include "wlgnn/evaluate.hpp"
#include "wlgnn/formula_pool.hpp"
#include "wlgnn/fragment.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/sexpr.hpp"
#include "wlgnn/synthesize.hpp"
#include "wlgnn/wl.hpp"

using namespace wlgnn;

namespace {

Formula min_degree(std::size_t d) {
  return forall("x", exists_ge(d, "y", edge("x", "y")));
}

Graph corpus(const char* name) {
  return read_graph_file(std::string(WLGNN_CORPUS_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("minimum degree sentence") {
  CHECK(evaluate(min_degree(3), random_regular(10, 3, 1)));
  CHECK(evaluate(min_degree(2), cycle(7)));
  CHECK_FALSE(evaluate(min_degree(2), star(4)));
  CHECK(evaluate(min_degree(1), star(4)));
}

TEST_CASE("label atom") {
  const Graph g(3, 1, {{0, 1}}, {{2, 0}});
  const auto f = parse_formula("(P 1 x)");
  CHECK(evaluate(f, g, {{"x", 2}}));
  CHECK_FALSE(evaluate(f, g, {{"x", 0}}));
  CHECK_THROWS_AS(evaluate(f, g), EvalError);
  CHECK_THROWS_AS(evaluate(f, g, {{"x", 9}}), EvalError);
}

TEST_CASE("busy-neighbour formula on its witness graphs") {
  const auto f = example_busy_neighbour_formula();
  CHECK_FALSE(evaluate(f, corpus("busy_two_hubs.gr"), {{"x", 0}}));
  CHECK(evaluate(f, corpus("busy_one_hub.gr"), {{"x", 0}}));
  // a hub sees only leaves and vertex 0, none of which has 11 labelled neighbours
  CHECK(evaluate(f, corpus("busy_two_hubs.gr"), {{"x", 1}}));
}

TEST_CASE("fragment reports") {
  const auto ex = fragment_check(example_busy_neighbour_formula());
  CHECK(ex.variable_count == 2);
  CHECK(ex.quantifier_rank == 2);
  CHECK(ex.is_guarded);
  CHECK(ex.is_gc2);

  const auto unguarded = fragment_check(parse_formula("(existsGE 1 y (P 1 y))"));
  CHECK_FALSE(unguarded.is_guarded);
  CHECK(unguarded.violation == "existsGE[1]");

  const auto leaky = fragment_check(parse_formula("(existsGE 1 y (and (E x y) (P 1 x)))"));
  CHECK_FALSE(leaky.is_guarded);

  const auto reversed = fragment_check(parse_formula("(existsGE 2 y (and (E y x) (P 1 y)))"));
  CHECK(reversed.is_guarded);

  const auto diameter = fragment_check(forall("x", forall("y", distance_formula(2, "x", "y", "z"))));
  CHECK(diameter.variable_count == 3);
  CHECK_FALSE(diameter.is_gc2);

  const auto nested = fragment_check(parse_formula("(not (and (P 1 x) (existsGE 1 y (P 1 y))))"));
  CHECK(nested.violation == "not[0]/and[1]/existsGE[1]");

  CHECK(fragment_check(parse_formula("(P 1 x)")).quantifier_rank == 0);
  CHECK_FALSE(fragment_check(parse_formula("(E x y)")).is_gc2);
}

TEST_CASE("distance formula semantics") {
  const Graph p = path(6);
  const auto d2 = distance_formula(1, "x", "y", "z");
  CHECK(evaluate(d2, p, {{"x", 0}, {"y", 2}}));
  CHECK_FALSE(evaluate(d2, p, {{"x", 0}, {"y", 3}}));
  const auto diam4 = forall("x", forall("y", distance_formula(2, "x", "y", "z")));
  CHECK(evaluate(diam4, path(5)));
  CHECK_FALSE(evaluate(diam4, path(6)));
}

TEST_CASE("desugaring agrees with direct semantics") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_labelled_graph(uniform_index(rng, 1, 7), 0.4, 1, rng);
    const Formula body = random_gc2_formula(rng, "y", 1, 1);
    std::size_t count = 0;
    for (Vertex w = 0; w < g.order(); ++w) count += evaluate(body, g, {{"y", w}});
    CHECK(evaluate(exists("y", body), g) == (count >= 1));
    CHECK(evaluate(forall("y", body), g) == (count == g.order()));
    CHECK(evaluate(exists("y", body), g) == evaluate(exists_ge(1, "y", body), g));
  }
}

TEST_CASE("sexpr round trip and errors") {
  const std::string s =
      "(not (existsGE 2 y (and (E x y) (existsGE 11 x (and (E y x) (P 1 x))))))";
  CHECK(to_sexpr(parse_formula(s)) == s);
  CHECK(to_sexpr(parse_formula("(exists y (true y))")) == "(existsGE 1 y (= y y))");
  CHECK(to_sexpr(parse_formula("(forall y (P 2 y)) ; comment")) ==
        "(not (existsGE 1 y (not (P 2 y))))");
  CHECK_THROWS_AS(parse_formula("(existsGE 0 y (E x y))"), SexprError);
  CHECK_THROWS_AS(parse_formula("(and)"), SexprError);
  CHECK_THROWS_AS(parse_formula("(P 1 x"), SexprError);
  CHECK_THROWS_AS(parse_formula("(foo x)"), SexprError);
  CHECK_THROWS_AS(parse_formula("(P 1 x) (P 1 x)"), SexprError);
  CHECK_THROWS_AS(parse_formula("(P 0 x)"), SexprError);
}

TEST_CASE("evaluation is isomorphism invariant") {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_labelled_graph(uniform_index(rng, 1, 8), 0.5, 2, rng);
    const auto perm = random_permutation(g.order(), rng);
    const Graph pg = g.permuted(perm);
    const Formula f = random_gc2_formula(rng, "x", 3, 2);
    for (Vertex v = 0; v < g.order(); ++v)
      CHECK(evaluate(f, g, {{"x", v}}) == evaluate(f, pg, {{"x", perm[v]}}));
  }
}

TEST_CASE("synthesizer on the path K_{1,2}") {
  const Graph p3 = path(3);
  const auto r = synthesize_distinguishing_formula(p3, 1, p3, 0, 1);
  REQUIRE(r.distinguished);
  CHECK(to_sexpr(r.formula) == "(existsGE 2 y (and (E x y) (= y y)))");
  CHECK(evaluate(r.formula, p3, {{"x", 1}}));
  CHECK_FALSE(evaluate(r.formula, p3, {{"x", 0}}));
  CHECK_FALSE(synthesize_distinguishing_formula(p3, 0, p3, 2, 5).distinguished);
  CHECK_FALSE(synthesize_distinguishing_formula(p3, 1, p3, 0, 0).distinguished);
}

TEST_CASE("synthesized formulas are guarded, small in rank and correct") {
  Rng rng(10);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_suite_graph(1, 7, trial % 2, rng);
    const Graph h = random_suite_graph(1, 7, trial % 2, rng);
    const std::size_t t = uniform_index(rng, 0, 4);
    const Vertex v = static_cast<Vertex>(uniform_index(rng, 0, g.order() - 1));
    const Vertex w = static_cast<Vertex>(uniform_index(rng, 0, h.order() - 1));
    const auto r = synthesize_distinguishing_formula(g, v, h, w, t);
    WlOptions opt;
    opt.max_rounds = t;
    opt.stop_when_stable = false;
    const Graph* gs[2] = {&g, &h};
    const auto runs = run_joint(Algorithm::ColourRefinement, 1, std::span<const Graph* const>(gs, 2), opt);
    const bool differ = runs[0].rounds[t].ids[v] != runs[1].rounds[t].ids[w];
    CHECK(r.distinguished == differ);
    if (!r.distinguished) continue;
    ++checked;
    const auto rep = fragment_check(r.formula);
    CHECK(rep.is_guarded);
    CHECK(rep.is_gc2);
    CHECK(rep.variable_count <= 2);
    CHECK(rep.quantifier_rank <= t);
    CHECK(evaluate(r.formula, g, {{"x", v}}));
    CHECK_FALSE(evaluate(r.formula, h, {{"x", w}}));
  }
  CHECK(checked > 100);
}

TEST_CASE("colour-equal vertices satisfy the same pool formulas") {
  Rng rng(13);
  std::vector<Formula> pool = seed_gc2_formulas(1);
  for (int i = 0; i < 60; ++i) pool.push_back(random_gc2_formula(rng, "x", 3, 1));
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_suite_graph(2, 7, 1, rng);
    const Graph h = random_suite_graph(2, 7, 1, rng);
    WlOptions opt;
    opt.max_rounds = 3;
    opt.stop_when_stable = false;
    const Graph* gs[2] = {&g, &h};
    const auto runs = run_joint(Algorithm::ColourRefinement, 1, std::span<const Graph* const>(gs, 2), opt);
    for (const auto& f : pool) {
      const std::size_t t = f->rank;
      const auto eg = evaluate_all(f, g, "x");
      const auto eh = evaluate_all(f, h, "x");
      for (Vertex v = 0; v < g.order(); ++v)
        for (Vertex w = 0; w < h.order(); ++w)
          if (runs[0].rounds[t].ids[v] == runs[1].rounds[t].ids[w]) CHECK(eg[v] == eh[w]);
    }
  }
}
