#include "doctest.h"
#include "wlgnn/corpora.hpp"
#include "wlgnn/evaluate.hpp"
#include "wlgnn/express.hpp"
#include "wlgnn/formula_pool.hpp"
#include "wlgnn/gc2_compiler.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/model_io.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/sexpr.hpp"

using namespace wlgnn;

namespace {

void agrees_everywhere(const CompiledGnn& c, const Formula& f, const std::vector<Graph>& graphs) {
  const std::string var = f->free.empty() ? "x" : f->free.front();
  for (const auto& g : graphs) {
    const auto truth = evaluate_all(f, g, var);
    const auto out = run(c.model, g).vertex_output;
    for (Vertex v = 0; v < g.order(); ++v) CHECK(out.exact[v][0] == (truth[v] ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("a single label atom compiles to zero layers") {
  const auto c = compile_formula(parse_formula("(P 1 x)"), 1);
  CHECK(c.plan.size() == 1);
  CHECK(c.plan.operation_count() == 0);
  CHECK(c.model.layers.empty());
  const Graph g(3, 1, {{0, 1}}, {{1, 0}});
  const auto out = run(c.model, g).vertex_output;
  CHECK(out.exact[0][0] == 0);
  CHECK(out.exact[1][0] == 1);
}

TEST_CASE("plan of the busy-neighbour formula") {
  const auto plan = plan_formula(example_busy_neighbour_formula());
  REQUIRE(plan.labels == 1);
  // Guarded quantifiers are single operations: inner diamond, outer diamond, negation.
  CHECK(plan.operation_count() == 3);
  CHECK(plan.nodes[1].kind == PlanNode::Kind::Diamond);
  CHECK(plan.nodes[1].index == 11);
  CHECK(plan.nodes[1].args == std::vector<std::size_t>{0});
  CHECK(plan.nodes[2].kind == PlanNode::Kind::Diamond);
  CHECK(plan.nodes[2].args == std::vector<std::size_t>{1});
  CHECK(plan.nodes[3].kind == PlanNode::Kind::Not);
  CHECK(plan.root == 3);
  for (std::size_t i = 0; i < plan.size(); ++i)
    for (auto a : plan.nodes[i].args) CHECK(a < i);
}

TEST_CASE("shared subformulas appear once, whatever their variable") {
  const auto f = parse_formula(
      "(and (existsGE 1 y (and (E x y) (P 1 y)))"
      "     (existsGE 1 y (and (E x y) (P 1 y)))"
      "     (existsGE 2 y (and (E x y) (existsGE 1 x (and (E y x) (P 1 x))))))");
  const auto plan = plan_formula(f);
  // P1, <>1 P1, <>2 <>1 P1, and.
  CHECK(plan.size() == 4);
  CHECK(plan.nodes[plan.root].kind == PlanNode::Kind::And);
  CHECK(plan.nodes[plan.root].args.size() == 2);
}

TEST_CASE("non-GC2 input is rejected with the violation path") {
  try {
    plan_formula(parse_formula("(not (existsGE 1 y (P 1 y)))"));
    FAIL("expected a CompileError");
  } catch (const CompileError& e) {
    CHECK(e.path == "not[0]/existsGE[1]");
  }
  CHECK_THROWS_AS(plan_formula(parse_formula("(E x y)")), CompileError);
  CHECK_THROWS_AS(plan_formula(parse_formula("(existsGE 1 y (and (E x y) (existsGE 1 z (and (E y z) (P 1 z)))))")),
                  CompileError);
}

TEST_CASE("quantifier gate thresholds at p") {
  const auto c = compile_formula(parse_formula("(existsGE 11 y (and (E x y) (P 1 y)))"));
  REQUIRE(c.model.layers.size() == 1);
  const auto& st = std::get<AffineStage>(c.model.layers[0].comb.stages[0]);
  CHECK(st.b.back() == -10);
  CHECK(st.activation == Activation::LSig);
  CHECK(run(c.model, hub_tree({11})).vertex_output.exact[1][0] == 1);
  CHECK(run(c.model, hub_tree({10})).vertex_output.exact[1][0] == 0);
}

TEST_CASE("Boolean gates and constants") {
  const auto g = Graph(4, 2, {{0, 1}, {1, 2}}, {{0, 0}, {0, 1}, {1, 0}, {3, 1}});
  for (const char* text : {"(and (P 1 x) (P 2 x))", "(or (P 1 x) (P 2 x))", "(not (P 2 x))",
                           "(= x x)", "(E x x)", "(and (P 1 x) (not (P 1 x)))",
                           "(or (and (P 1 x) (P 2 x)) (not (P 1 x)))"}) {
    const auto f = parse_formula(text);
    agrees_everywhere(compile_formula(f, 2), f, {g, path(3), empty_graph(1)});
  }
}

TEST_CASE("busy-neighbour formula agrees with the evaluator on the certification corpus") {
  const auto f = example_busy_neighbour_formula();
  const auto c = compile_formula(f);
  const auto corpus = certification_corpus();
  REQUIRE(corpus.size() == 50);
  agrees_everywhere(c, f, corpus);
  // Root is vertex 0 in the hub trees: one busy hub satisfies, two do not.
  CHECK(run(c.model, hub_tree({12})).vertex_output.exact[0][0] == 1);
  CHECK(run(c.model, hub_tree({12, 12})).vertex_output.exact[0][0] == 0);
  const auto cert = certify(c, corpus);
  CHECK(cert.pass);
  CHECK_FALSE(cert.vacuous);
  CHECK(cert.graphs == 50);
}

TEST_CASE("certification of seeded and random formulas") {
  auto formulas = seed_gc2_formulas(1);
  Rng rng(31);
  for (int i = 0; i < 20; ++i) formulas.push_back(random_gc2_formula(rng, "x", 3, 1, 3));
  const auto corpus = certification_corpus(30, 5);
  REQUIRE(formulas.size() >= 20);
  for (const auto& f : formulas) {
    const auto c = compile_formula(f, 1);
    const auto cert = certify(c, corpus);
    CHECK_MESSAGE(cert.pass, to_sexpr(f));
    // Carried coordinates never change.
    RunOptions ro;
    ro.keep_trace = true;
    const auto r = run(c.model, corpus[1], ro);
    for (std::size_t t = 0; t + 1 < r.trace.size(); ++t)
      for (std::size_t v = 0; v < corpus[1].order(); ++v)
        for (std::size_t i = 0; i < r.trace[t].dim; ++i) CHECK(r.trace[t].exact[v][i] == r.trace[t + 1].exact[v][i]);
  }
}

TEST_CASE("fault injection: a bias off by one is caught") {
  auto c = compile_formula(example_busy_neighbour_formula());
  auto& st = std::get<AffineStage>(c.model.layers[0].comb.stages[0]);
  st.b.back() += 1;  // threshold 10 instead of 11
  const auto cert = certify(c, certification_corpus());
  CHECK_FALSE(cert.pass);
  REQUIRE(cert.failure);
  CHECK(cert.failure->layer == 1);
  CHECK(cert.failure->coordinate == 1);
  CHECK(cert.failure->got == "1");
  CHECK_FALSE(cert.failure->expected);
}

TEST_CASE("an empty corpus passes vacuously and says so") {
  const auto cert = certify(compile_formula(example_busy_neighbour_formula()), {});
  CHECK(cert.pass);
  CHECK(cert.vacuous);
  CHECK(cert.checks == 0);
}

TEST_CASE("one compiled model serves every graph size") {
  Rng rng(8);
  const auto f = parse_formula(
      "(and (existsGE 2 y (and (E x y) (P 1 y))) (not (existsGE 4 y (and (E x y) (true y)))))");
  const auto c = compile_formula(f);
  for (std::size_t n = 2; n <= 64; ++n) agrees_everywhere(c, f, {random_labelled_graph(n, 4.0 / n, 1, rng)});
}

TEST_CASE("compiled models express their query with margin exactly one") {
  const auto f = example_busy_neighbour_formula();
  const auto c = compile_formula(f);
  std::vector<QueryCase> cases;
  for (const auto& g : certification_corpus(20)) cases.push_back({g, evaluate_all(f, g, "x")});
  for (double eps : {0.0, 0.25, 0.49}) {
    ExpressOptions o;
    o.epsilon = eps;
    const auto rep = expresses_query_check(c.model, cases, o);
    CHECK(rep.expresses);
    CHECK(rep.achieved_epsilon == 0.0);
    REQUIRE(rep.margin);
    CHECK(*rep.margin == 1.0);
    for (const auto& v : rep.vertices) CHECK((v.exact_output == 0 || v.exact_output == 1));
  }
}

TEST_CASE("compiled models survive the model file format") {
  const auto c = compile_formula(example_busy_neighbour_formula());
  const auto back = read_model(write_model(c.model));
  for (const auto& g : certification_corpus(10))
    CHECK(run(back, g).vertex_output == run(c.model, g).vertex_output);
}
