#include <cmath>

#include "doctest.h"
#include "wlgnn/derived_structure.hpp"
#include "wlgnn/express.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/gnn.hpp"
#include "wlgnn/model_io.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/wl.hpp"

using namespace wlgnn;

namespace {

RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

Matrix mat(std::size_t r, std::size_t c, std::initializer_list<long> xs) {
  Matrix m(r, c);
  std::size_t i = 0;
  for (long x : xs) m.data[i++] = x;
  return m;
}

// x + s on one-dimensional features.
GnnLayer sum_layer() {
  GnnLayer l;
  l.in_dim = 1;
  l.out_dim = 1;
  l.comb = affine_comb(mat(1, 2, {1, 1}), rv({0}), Activation::Identity);
  return l;
}

FeatureMap exact_map(std::vector<RationalVector> rows) {
  FeatureMap z;
  z.mode = NumericMode::Rational;
  z.dim = rows.empty() ? 0 : rows.front().size();
  z.exact = std::move(rows);
  return z;
}

bool rows_equal(const FeatureMap& a, std::size_t v, const FeatureMap& b, std::size_t w) {
  return a.mode == NumericMode::Rational ? a.exact[v] == b.exact[w] : a.approx[v] == b.approx[w];
}

}  // namespace

TEST_CASE("initial features: labels, padding and the q0 >= l precondition") {
  const auto z = initial_features(path(3), 3, NumericMode::Rational);
  for (const auto& row : z.exact) CHECK(row == rv({0, 0, 0}));

  const Graph g(2, 2, {{0, 1}}, {{0, 0}, {1, 1}});
  const auto y = initial_features(g, 2, NumericMode::Rational);
  CHECK(y.exact[0] == rv({1, 0}));
  CHECK(y.exact[1] == rv({0, 1}));
  CHECK_THROWS_AS(initial_features(g, 1, NumericMode::Rational), ModelError);
}

TEST_CASE("random initialisation is reproducible and seed dependent") {
  const Graph g = cycle(5);
  const auto a = rni_draws(5, 2, 7), b = rni_draws(5, 2, 7), c = rni_draws(5, 2, 8);
  CHECK(a == b);
  CHECK(a != c);
  const auto za = initial_features(g, 3, NumericMode::Rational, &a);
  const auto zb = initial_features(g, 3, NumericMode::Rational, &b);
  const auto zc = initial_features(g, 3, NumericMode::Rational, &c);
  CHECK(za == zb);
  CHECK_FALSE(za == zc);
  for (const auto& row : za.exact) {
    CHECK(row[0] == 0);
    CHECK(row[1] >= 0);
    CHECK(row[1] < 1);
    CHECK(row[2].get_den() <= mpz_class(1) << 64);
  }
  const auto zf = initial_features(g, 3, NumericMode::Float64, &a);
  for (std::size_t v = 0; v < 5; ++v) CHECK(std::abs(zf.approx[v][1] - za.exact[v][1].get_d()) < 1e-15);
}

TEST_CASE("apply_layer: K2 with x + s, isolated vertices and the identity block") {
  const auto out = apply_layer(sum_layer(), complete(2), exact_map({rv({1}), rv({2})}));
  CHECK(out.exact[0] == rv({3}));
  CHECK(out.exact[1] == rv({3}));
  CHECK(out.round == 1);

  // Vertex 2 is isolated: its neighbour block is the zero vector.
  GnnLayer probe;
  probe.in_dim = 1;
  probe.out_dim = 2;
  probe.comb = affine_comb(Matrix::identity(2), rv({0, 0}), Activation::Identity);
  const Graph g(3, 0, {{0, 1}});
  const auto p = apply_layer(probe, g, exact_map({rv({5}), rv({7}), rv({9})}));
  CHECK(p.exact[2] == rv({9, 0}));
  CHECK(p.exact[0] == rv({5, 7}));

  GnnLayer ident;
  ident.in_dim = 2;
  ident.out_dim = 2;
  ident.comb = affine_comb(mat(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}), rv({0, 0}), Activation::Identity);
  const auto z = exact_map({rv({1, 2}), rv({3, 4}), rv({5, 6})});
  CHECK(apply_layer(ident, path(3), z).exact == z.exact);
}

TEST_CASE("global readout sums over every vertex including v") {
  GnnLayer l;
  l.in_dim = 1;
  l.out_dim = 1;
  l.global_readout = true;
  l.comb = affine_comb(mat(1, 3, {0, 0, 1}), rv({0}), Activation::Identity);
  const auto out = apply_layer(l, empty_graph(3), exact_map({rv({1}), rv({2}), rv({4})}));
  for (const auto& row : out.exact) CHECK(row == rv({7}));
}

TEST_CASE("activations are exact in rational mode") {
  CHECK(apply_activation(Activation::LSig, Rational(-3, 2)) == 0);
  CHECK(apply_activation(Activation::LSig, Rational(1, 3)) == Rational(1, 3));
  CHECK(apply_activation(Activation::LSig, Rational(7, 3)) == 1);
  CHECK(apply_activation(Activation::ReLU, Rational(-1)) == 0);
  CHECK(apply_activation(Activation::ReLU, Rational(5, 2)) == Rational(5, 2));
  CHECK_THROWS_AS(apply_activation(Activation::Sig, Rational(0)), ModelError);
  CHECK(apply_activation(Activation::Sig, 0.0) == doctest::Approx(0.5));
  CHECK(apply_activation(Activation::Tanh, 0.0) == 0.0);
}

TEST_CASE("dimension chaining and oracle misses are reported") {
  Comb c;
  c.stages.push_back(AffineStage{mat(2, 2, {1, 0, 0, 1}), rv({0, 0}), Activation::ReLU});
  c.stages.push_back(AffineStage{mat(1, 3, {1, 1, 1}), rv({0}), Activation::ReLU});
  CHECK_THROWS_AS(c.validate(), ModelError);

  GnnModel m;
  m.input_dim = 1;
  m.layers.push_back(sum_layer());
  m.layers.push_back(sum_layer());
  m.layers.back().in_dim = 2;
  CHECK_THROWS_AS(m.validate(), ModelError);

  OracleStage o;
  o.in_dim = 2;
  o.out_dim = 1;
  o.entries[rv({0, 0})] = rv({5});
  GnnLayer l;
  l.in_dim = 1;
  l.out_dim = 1;
  l.comb.stages.push_back(o);
  const auto z = exact_map({rv({0}), rv({0})});
  CHECK(apply_layer(l, empty_graph(2), z).exact[0] == rv({5}));
  CHECK_THROWS_AS(apply_layer(l, complete(2), exact_map({rv({1}), rv({0})})), ModelError);
  std::get<OracleStage>(l.comb.stages[0]).fallback = rv({9});
  CHECK(apply_layer(l, complete(2), exact_map({rv({1}), rv({0})})).exact[0] == rv({9}));
}

TEST_CASE("a model without layers returns its initial features") {
  GnnModel m;
  m.input_dim = 2;
  m.readout = affine_comb(Matrix::identity(2), rv({0, 0}), Activation::Identity);
  const Graph g(3, 2, {{0, 1}}, {{0, 0}, {2, 1}});
  const auto r = run(m, g);
  CHECK(r.vertex_output == initial_features(g, 2, NumericMode::Rational));
}

TEST_CASE("recurrent models iterate per policy") {
  GnnModel m;
  m.input_dim = 1;
  m.input_encoder = affine_comb(mat(1, 1, {0}), rv({1}), Activation::Identity);
  m.layers.push_back(sum_layer());
  m.recurrent = true;
  m.iter = {IterPolicy::Kind::GraphOrder, 0};
  // On K2 every round doubles the value: 1 -> 2 -> 4.
  CHECK(run(m, complete(2)).final_features.exact[0] == rv({4}));
  m.iter = {IterPolicy::Kind::Constant, 3};
  CHECK(run(m, complete(2)).final_features.exact[0] == rv({8}));
  RunOptions o;
  o.keep_trace = true;
  CHECK(run(m, complete(2), o).trace.size() == 4);
  m.layers.front().out_dim = 2;
  CHECK_THROWS_AS(m.validate(), ModelError);
}

TEST_CASE("equivariance under random permutations, both numeric modes") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t labels = trial % 3;
    const Graph g = random_suite_graph(2, 9, labels, rng);
    RandomModelOptions mo;
    mo.input_dim = std::max<std::size_t>(labels, 1);
    mo.depth = 1 + trial % 4;
    mo.global_readout = trial % 2 == 0;
    mo.mode = trial % 3 == 0 ? NumericMode::Float64 : NumericMode::Rational;
    mo.activation = trial % 3 == 0 ? Activation::Tanh : Activation::ReLU;
    const GnnModel m = random_model(mo, 100 + trial);
    const auto perm = random_permutation(g.order(), rng);
    const auto a = run(m, g).vertex_output;
    const auto b = run(m, g.permuted(perm)).vertex_output;
    for (Vertex v = 0; v < g.order(); ++v) CHECK(rows_equal(a, v, b, perm[v]));
  }
}

TEST_CASE("RNI as a random variable: permuting graph and draws together commutes") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_suite_graph(3, 8, 1, rng);
    RandomModelOptions mo;
    mo.input_dim = 3;
    mo.depth = 3;
    GnnModel m = random_model(mo, 500 + trial);
    m.rni_padding = 2;
    const auto perm = random_permutation(g.order(), rng);
    const auto draws = rni_draws(g.order(), 2, 900 + trial);
    const auto moved = permute_draws(draws, perm);
    RunOptions oa, ob;
    oa.draws = &draws;
    ob.draws = &moved;
    const auto a = run(m, g, oa).vertex_output;
    const auto b = run(m, g.permuted(perm), ob).vertex_output;
    for (Vertex v = 0; v < g.order(); ++v) CHECK(a.exact[v] == b.exact[perm[v]]);
  }
  GnnModel m = random_model({}, 1);
  m.rni_padding = 1;
  CHECK_THROWS_AS(run(m, cycle(4)), ModelError);
}

TEST_CASE("random-weight GNNs never split a colour-refinement class") {
  Rng rng(2024);
  std::size_t compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t labels = trial % 2;
    const Graph g = random_suite_graph(2, 7, labels, rng);
    const Graph h = random_suite_graph(2, 7, labels, rng);
    RandomModelOptions mo;
    mo.input_dim = std::max<std::size_t>(labels, 1);
    mo.depth = 1 + trial % 4;
    mo.mode = trial % 2 ? NumericMode::Float64 : NumericMode::Rational;
    mo.activation = trial % 2 ? Activation::Sig : Activation::ReLU;
    const GnnModel m = random_model(mo, trial);
    WlOptions wo;
    wo.max_rounds = mo.depth;
    wo.stop_when_stable = false;
    const Graph* gs[2] = {&g, &h};
    const auto cr = run_joint(Algorithm::ColourRefinement, 1, std::span<const Graph* const>(gs, 2), wo);
    const auto a = run(m, g).vertex_output, b = run(m, h).vertex_output;
    for (Vertex v = 0; v < g.order(); ++v)
      for (Vertex w = 0; w < h.order(); ++w)
        if (cr[0].at(mo.depth).ids[v] == cr[1].at(mo.depth).ids[w]) {
          ++compared;
          CHECK(rows_equal(a, v, b, w));
        }
  }
  CHECK(compared > 100);
}

TEST_CASE("aggregate readout cannot separate C6 from two triangles") {
  const Graph c6 = cycle(6), tt = disjoint_union(complete(3), complete(3));
  for (int s = 0; s < 30; ++s) {
    RandomModelOptions mo;
    mo.depth = 1 + s % 4;
    mo.aggregate_readout = true;
    mo.global_readout = s % 2 == 1;
    const auto m = random_model(mo, 77 + s);
    CHECK(run(m, c6).graph_output_exact == run(m, tt).graph_output_exact);
  }
}

TEST_CASE("k-GNN with k = 1 is a GNN on A_G") {
  const Graph g(4, 1, {{0, 1}, {1, 2}}, {{0, 0}, {3, 0}});
  RandomModelOptions mo;
  mo.input_dim = 2;
  mo.relations = 1;
  const auto m = random_model(mo, 9);
  const auto a = run_kgnn(m, g, 1).vertex_output;
  const auto b = run(m, derived_structure(g, 1)).vertex_output;
  CHECK(a == b);
  // A_G for k = 1 is the complete graph with one-hot label inputs.
  CHECK(a.exact[0] == a.exact[3]);
  CHECK(a.exact[1] == a.exact[2]);
}

TEST_CASE("random-weight 2-GNNs never split an oblivious 2-WL class") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_suite_graph(2, 6, 0, rng);
    RandomModelOptions mo;
    mo.input_dim = 4;  // 2^(k(k-1)) atomic types for k = 2, no labels
    mo.depth = 3;
    mo.relations = 2;
    const auto m = random_model(mo, 1000 + trial);
    WlOptions wo;
    wo.max_rounds = 3;
    wo.stop_when_stable = false;
    const auto chi = owl(g, 2, wo).at(3);
    const auto out = run_kgnn(m, g, 2).vertex_output;
    CHECK(refines(std::span<const ColourId>(chi.ids), std::span<const ColourId>(feature_partition(out))));
  }
}

TEST_CASE("model files round-trip") {
  RandomModelOptions mo;
  mo.input_dim = 2;
  mo.depth = 2;
  mo.global_readout = true;
  mo.aggregate_readout = true;
  mo.relations = 2;
  const auto m = random_model(mo, 4);
  const auto text = write_model(m);
  const auto back = read_model(text);
  CHECK(write_model(back) == text);
  CHECK(text.find("\"fnn\": true") != std::string::npos);

  const auto j = R"({"inputDim": 1, "numericMode": "rational",
    "layers": [{"inDim": 1, "outDim": 1, "A": [["1", 0.5]], "b": ["-1/3"], "activation": "lsig"}],
    "readout": {"A": [[2]]}})";
  const auto parsed = read_model(j);
  const auto& st = std::get<AffineStage>(parsed.layers[0].comb.stages[0]);
  CHECK(st.A(0, 1) == Rational(1, 2));
  CHECK(st.b[0] == Rational(-1, 3));
  CHECK(st.activation == Activation::LSig);

  CHECK_THROWS_AS(read_model("{"), ModelError);
  CHECK_THROWS_AS(read_model(R"({"inputDim": 1, "layers": [{"inDim": 2, "outDim": 1, "A": [[1,1,1,1]]}]})"),
                  ModelError);
  CHECK_THROWS_AS(read_model(R"({"inputDim": 1, "layers": [{"inDim": 1, "outDim": 1, "A": [[1,1]], "activation": "gelu"}]})"),
                  ModelError);
}

TEST_CASE("oracle stages are flagged as non-FNN in model files") {
  GnnModel m;
  m.input_dim = 1;
  GnnLayer l;
  l.in_dim = 1;
  l.out_dim = 1;
  OracleStage o;
  o.in_dim = 2;
  o.out_dim = 1;
  o.entries[rv({0, 0})] = rv({1});
  o.fallback = rv({0});
  l.comb.stages.push_back(o);
  m.layers.push_back(l);
  const auto text = write_model(m);
  CHECK(text.find("\"fnn\": false") != std::string::npos);
  const auto back = read_model(text);
  CHECK(run(back, path(3)).vertex_output == run(m, path(3)).vertex_output);
}

TEST_CASE("query check: a constant one-half model fails for every epsilon below one half") {
  GnnModel m;
  m.input_dim = 1;
  m.readout = affine_comb(mat(1, 1, {0}), {Rational(1, 2)}, Activation::Identity);
  std::vector<QueryCase> cases{{cycle(4), {true, false, true, false}}};
  for (double eps : {0.0, 0.1, 0.25, 0.49}) {
    ExpressOptions o;
    o.epsilon = eps;
    const auto r = expresses_query_check(m, cases, o);
    CHECK_FALSE(r.expresses);
    CHECK(r.achieved_epsilon == doctest::Approx(0.5));
  }
  ExpressOptions bad;
  bad.epsilon = 0.5;
  CHECK_THROWS(expresses_query_check(m, cases, bad));
}

TEST_CASE("Wilson interval") {
  const auto [lo, hi] = wilson_interval(0, 200);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(0.01884).epsilon(0.01));
  const auto [a, b] = wilson_interval(50, 100);
  CHECK(a < 0.5);
  CHECK(b > 0.5);
  CHECK(a + b == doctest::Approx(1.0));
}
