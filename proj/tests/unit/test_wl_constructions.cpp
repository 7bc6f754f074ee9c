#include <set>

#include "doctest.h"
#include "wlgnn/express.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/model_io.hpp"
#include "wlgnn/random_graphs.hpp"
#include "wlgnn/rni_triangle.hpp"
#include "wlgnn/sum_encoder.hpp"
#include "wlgnn/wl.hpp"
#include "wlgnn/wl_gnn.hpp"

using namespace wlgnn;

namespace {

// Every multiset of order <= bound over `size` elements, as count vectors.
void multisets(std::size_t size, std::size_t bound, std::vector<std::size_t>& cur, std::size_t pos,
               std::size_t used, std::vector<std::vector<std::size_t>>& out) {
  if (pos == size) {
    out.push_back(cur);
    return;
  }
  for (std::size_t c = 0; used + c <= bound; ++c) {
    cur[pos] = c;
    multisets(size, bound, cur, pos + 1, used + c, out);
  }
  cur[pos] = 0;
}

// Partition over the concatenation of several feature maps.
std::vector<std::uint32_t> joint_features(const std::vector<const FeatureMap*>& maps) {
  FeatureMap all;
  all.mode = NumericMode::Rational;
  all.dim = maps.front()->dim;
  for (const auto* m : maps) all.exact.insert(all.exact.end(), m->exact.begin(), m->exact.end());
  return feature_partition(all);
}

std::vector<ColourId> joint_colours(const std::vector<WlRun>& runs, std::size_t t) {
  std::vector<ColourId> ids;
  for (const auto& r : runs) ids.insert(ids.end(), r.at(t).ids.begin(), r.at(t).ids.end());
  return ids;
}

std::vector<WlRun> fixed_rounds(Algorithm a, std::size_t k, const std::vector<const Graph*>& gs, std::size_t t) {
  WlOptions o;
  o.max_rounds = t;
  o.stop_when_stable = false;
  return run_joint(a, k, std::span<const Graph* const>(gs), o);
}

}  // namespace

TEST_CASE("sum encoder: worked examples") {
  const auto e = build_sum_encoder(2, {Rational(1, 2)});
  CHECK(e.k == 1);
  CHECK(e.encode(Rational(1, 2)) == Rational(1, 4));
  CHECK(e.sum({0}) == 0);
  CHECK(e.sum({1}) == Rational(1, 4));

  const auto f = build_sum_encoder(3, {Rational(1, 2), Rational(1, 4)});
  CHECK(f.k == 2);
  CHECK(f.values[0] == Rational(1, 27));
  CHECK(f.values[1] == Rational(1, 81));
  CHECK(f.sum({2, 0}) == Rational(2, 27));
  CHECK(f.sum({2, 0}) < Rational(1, 4));
}

TEST_CASE("sum encoder: input validation") {
  CHECK_THROWS_AS(build_sum_encoder(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_sum_encoder(3, {Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(build_sum_encoder(3, {Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(build_sum_encoder(3, {Rational(1, 3), Rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(build_sum_encoder(1, {Rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(build_sum_encoder(2, {Rational(1, 3)}).encode(Rational(1, 5)), std::out_of_range);
}

TEST_CASE("sum encoder: exhaustive injectivity and the bound below min X") {
  Rng rng(8);
  for (unsigned long m = 2; m <= 5; ++m)
    for (std::size_t size = 1; size <= 4; ++size) {
      std::set<Rational> xs;
      while (xs.size() < size) xs.insert(Rational(uniform_index(rng, 1, 98), 99));
      std::vector<Rational> order(xs.begin(), xs.end());
      std::shuffle(order.begin(), order.end(), rng);
      const auto e = build_sum_encoder(m, order);
      CHECK(power(m, -e.k) <= e.min_x());
      CHECK(power(m, -(e.k - 1)) > e.min_x());
      std::vector<std::vector<std::size_t>> all;
      std::vector<std::size_t> cur(size, 0);
      multisets(size, m - 1, cur, 0, 0, all);
      std::set<Rational> sums;
      for (const auto& c : all) {
        const auto s = e.sum(c);
        CHECK(s < e.min_x());
        sums.insert(s);
      }
      CHECK(sums.size() == all.size());
    }
}

TEST_CASE("WL-GNN on the path K_{1,2} splits centre from leaves in round 1") {
  auto m = build_wl_gnn(3, 0);
  RunOptions o;
  o.keep_trace = true;
  const auto r = run(m, star(3), o);
  REQUIRE(r.trace.size() == 4);
  const auto p = feature_partition(r.trace[1]);
  CHECK(p == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(feature_partition(r.trace[0]) == std::vector<std::uint32_t>{0, 0, 0});
}

TEST_CASE("WL-GNN keeps C6 and two triangles indistinguishable") {
  auto m = build_wl_gnn(6, 0);
  RunOptions o;
  o.keep_trace = true;
  const auto a = run(m, cycle(6), o), b = run(m, disjoint_union(complete(3), complete(3)), o);
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    std::set<RationalVector, RationalVectorLess> values;
    for (const auto& row : a.trace[t].exact) values.insert(row);
    for (const auto& row : b.trace[t].exact) values.insert(row);
    CHECK(values.size() == 1);
  }
}

TEST_CASE("WL-GNN partitions equal colour refinement, per round and across graphs") {
  Rng rng(77);
  auto model = build_wl_gnn(8, 1);
  std::vector<Graph> gs;
  for (int i = 0; i < 40; ++i) gs.push_back(random_suite_graph(1, 8, 1, rng));
  std::vector<RunResult> res;
  RunOptions o;
  o.keep_trace = true;
  o.max_rounds = 8;
  std::vector<const Graph*> ptrs;
  for (const auto& g : gs) {
    res.push_back(run(model, g, o));
    ptrs.push_back(&g);
  }
  const auto cr = fixed_rounds(Algorithm::ColourRefinement, 1, ptrs, 8);
  for (std::size_t t = 0; t <= 8; ++t) {
    std::vector<const FeatureMap*> maps;
    for (std::size_t i = 0; i < gs.size(); ++i)
      maps.push_back(&res[i].trace[std::min(t, res[i].trace.size() - 1)]);
    // Graphs stop after |G| rounds; colour refinement is stable by then, so
    // comparing the last trace entry is sound. Only graphs with |G| >= t count
    // for the cross-graph equality at round t.
    std::vector<const FeatureMap*> live;
    std::vector<ColourId> ids;
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (gs[i].order() >= t) {
        live.push_back(maps[i]);
        ids.insert(ids.end(), cr[i].at(t).ids.begin(), cr[i].at(t).ids.end());
      }
    CHECK(equivalent(std::span<const ColourId>(ids), std::span<const ColourId>(joint_features(live))));
  }
}

TEST_CASE("WL-GNN round values stay on the round's grid") {
  auto model = build_wl_gnn(5, 0);
  RunOptions o;
  o.keep_trace = true;
  const auto r = run(model, path(5), o);
  Rational prev_max = 1;
  for (const auto& z : r.trace) {
    Rational hi = 0;
    for (const auto& row : z.exact) {
      CHECK(sgn(row[0]) > 0);
      hi = std::max(hi, row[0]);
    }
    CHECK(hi < prev_max);
    Rational lo = hi;
    for (const auto& row : z.exact) lo = std::min(lo, row[0]);
    prev_max = lo;  // next round sits strictly below every value of this one
  }
}

TEST_CASE("WL-GNN: capacity overflow is an error, state survives a file round-trip") {
  WlGnnOptions tiny;
  tiny.round_capacity = 1;
  auto m = build_wl_gnn(4, 0, tiny);
  CHECK_THROWS_AS(run(m, star(4)), ModelError);

  auto model = build_wl_gnn(6, 0);
  RunOptions o;
  o.keep_trace = true;
  const auto first = run(model, cycle(5), o);
  auto copy = read_model(write_model(model));
  CHECK(write_model(copy) == write_model(model));
  const auto a = run(copy, path(6), o), b = run(model, path(6), o);
  CHECK(a.final_features == b.final_features);
  CHECK(run(copy, cycle(5)).final_features == first.final_features);
}

TEST_CASE("global-readout WL-GNN separates C5 from C6") {
  auto m = build_wl1_gnn(6, 0);
  RunOptions o;
  o.keep_trace = true;
  const auto a = run(m, cycle(5), o), b = run(m, cycle(6), o);
  CHECK(a.trace[0].exact[0] == b.trace[0].exact[0]);
  for (std::size_t t = 1; t < a.trace.size(); ++t) CHECK(a.trace[t].exact[0] != b.trace[t].exact[0]);
  const auto k1 = run(build_wl1_gnn(1, 0), empty_graph(1), o);
  CHECK(k1.trace.size() == 2);
}

TEST_CASE("global-readout WL-GNN matches wl^1 on single graphs and refines it jointly") {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = random_suite_graph(1, 6, trial % 2, rng);
    const Graph h = random_suite_graph(1, 6, trial % 2, rng);
    auto model = build_wl1_gnn(6, trial % 2);
    RunOptions o;
    o.keep_trace = true;
    o.max_rounds = 6;
    // Fixed round count regardless of |G| so both traces have 7 entries.
    model.iter = {IterPolicy::Kind::Constant, 6};
    const auto a = run(model, g, o), b = run(model, h, o);
    const auto w = fixed_rounds(Algorithm::WL, 1, {&g, &h}, 6);
    const auto single = fixed_rounds(Algorithm::WL, 1, {&g}, 6);
    for (std::size_t t = 0; t <= 6; ++t) {
      CHECK(equivalent(std::span<const ColourId>(single[0].at(t).ids),
                       std::span<const ColourId>(feature_partition(a.trace[t]))));
      CHECK(refines(std::span<const ColourId>(joint_features({&a.trace[t], &b.trace[t]})),
                    std::span<const ColourId>(joint_colours(w, t))));
    }
  }
}

TEST_CASE("constructive 2-GNN reproduces oblivious 2-WL partitions") {
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = random_suite_graph(1, 5, trial % 2, rng);
    const std::size_t rounds = 4;
    auto model = build_kgnn_wl(5, 2, trial % 2, rounds);
    RunOptions o;
    o.keep_trace = true;
    const auto r = run_kgnn(model, g, 2, o);
    const auto chi = fixed_rounds(Algorithm::OWL, 2, {&g}, rounds);
    for (std::size_t t = 0; t <= rounds; ++t)
      CHECK(equivalent(std::span<const ColourId>(chi[0].at(t).ids),
                       std::span<const ColourId>(feature_partition(r.trace[t]))));
  }
}

TEST_CASE("RNI triangle model separates C6 from two triangles") {
  const auto model = build_rni_triangle_model();
  std::vector<QueryCase> cases{{cycle(6), std::vector<bool>(6, false)},
                               {disjoint_union(complete(3), complete(3)), std::vector<bool>(6, true)}};
  ExpressOptions o;
  o.epsilon = 0.25;
  o.trials = 200;
  o.seed = 12345;
  const auto rep = expresses_query_check(model, cases, o);
  CHECK(rep.randomised);
  CHECK(rep.trials == 200);
  CHECK(rep.delta_hat < 0.05);
  CHECK(rep.expresses);
  // Triangle vertices are never missed; only id collisions cause errors.
  for (const auto& v : rep.vertices)
    if (v.member) CHECK(v.success_rate == 1.0);

  const auto back = read_model(write_model(model));
  RunOptions ro;
  ro.seed = 5;
  CHECK(run(back, cycle(6), ro).vertex_output == run(model, cycle(6), ro).vertex_output);
}

TEST_CASE("RNI triangle model on graphs with and without triangles") {
  const auto model = build_rni_triangle_model();
  RunOptions ro;
  ro.seed = 99;
  // Triangle 0-1-2 with a pendant path 2-3-4.
  const Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
  const auto out = run(model, g, ro).vertex_output;
  CHECK(out.exact[0][0] == 1);
  CHECK(out.exact[2][0] == 1);
  CHECK(out.exact[4][0] == 0);
}
