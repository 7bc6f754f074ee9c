#include <algorithm>
#include <filesystem>
#include <numeric>

#include "doctest.h"
#include "wlgnn/atomic_type.hpp"
#include "wlgnn/colouring.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/graph_io.hpp"
#include "wlgnn/random_graphs.hpp"

using namespace wlgnn;

namespace {

std::vector<std::size_t> degree_multiset(const Graph& g) {
  std::vector<std::size_t> d;
  for (Vertex v = 0; v < g.order(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

bool is_srg(const Graph& g, std::size_t k, std::size_t lambda, std::size_t mu) {
  for (Vertex u = 0; u < g.order(); ++u) {
    if (g.degree(u) != k) return false;
    for (Vertex v = u + 1; v < g.order(); ++v) {
      std::size_t common = 0;
      for (Vertex w = 0; w < g.order(); ++w) common += g.adjacent(u, w) && g.adjacent(v, w);
      if (common != (g.adjacent(u, v) ? lambda : mu)) return false;
    }
  }
  return true;
}

// Does v_i -> w_i define an isomorphism of the induced labelled subgraphs?
bool induced_iso(const Graph& g, const std::vector<Vertex>& v, const Graph& h,
                 const std::vector<Vertex>& w) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t l = 0; l < g.label_count(); ++l)
      if (g.has_label(v[i], l) != h.has_label(w[i], l)) return false;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if ((v[i] == v[j]) != (w[i] == w[j])) return false;
      if (g.adjacent(v[i], v[j]) != h.adjacent(w[i], w[j])) return false;
    }
  }
  return true;
}

std::vector<Vertex> random_tuple(std::size_t k, std::size_t n, Rng& rng) {
  std::vector<Vertex> t(k);
  for (auto& x : t) x = static_cast<Vertex>(uniform_index(rng, 0, n - 1));
  return t;
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(Graph(3, 0, {{0, 0}}), GraphError);
  CHECK_THROWS_AS(Graph(3, 0, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(Graph(3, 0, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(Graph(3, 1, {}, {{0, 1}}), GraphError);
  const Graph g(3, 0, {{2, 0}});
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(2, 0));
  CHECK_FALSE(g.adjacent(0, 0));
}

TEST_CASE("atomic type examples") {
  const Graph single(1, 0);
  const Vertex v0[1] = {0};
  CHECK(atomic_type(single, v0).size() == 0);

  const Graph k2 = complete(2);
  const Vertex diag[2] = {1, 1};
  CHECK(atomic_type(k2, diag).bits == std::vector<std::uint8_t>{1, 0});
  const Vertex edge[2] = {0, 1};
  CHECK(atomic_type(k2, edge).bits == std::vector<std::uint8_t>{0, 1});

  const Vertex bad[2] = {0, 7};
  CHECK_THROWS_AS(atomic_type(k2, bad), GraphError);

  const Graph labelled(2, 2, {{0, 1}}, {{0, 0}, {1, 1}});
  const Vertex one[1] = {0};
  CHECK(atomic_type(labelled, one).bits == labelled.colour(0));
  CHECK(atomic_type_width(labelled, 3) == 6 + 6);
}

TEST_CASE("structure atomic types use m*k^2 + C(k,2) + k*l bits") {
  const BinaryStructure s(3, {{{0, 1}, {2, 2}}, {{1, 0}}}, 1, {{1, 0, 0}});
  CHECK(atomic_type_width(s, 2) == 2 * 4 + 1 + 2);
  const Vertex t[2] = {0, 1};
  const auto a = atomic_type(s, t);
  REQUIRE(a.size() == 11);
  // relation 0 block: (0,0) (0,1) (1,0) (1,1)
  CHECK(a.bits[1] == 1);
  CHECK(a.bits[2] == 0);
  // relation 1 block
  CHECK(a.bits[6] == 1);
  const Vertex loop[1] = {2};
  CHECK(atomic_type(s, loop).bits == s.colour(2));
}

TEST_CASE("atomic types are isomorphism invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_labelled_graph(uniform_index(rng, 1, 8), 0.5, 2, rng);
    const auto perm = random_permutation(g.order(), rng);
    const Graph pg = g.permuted(perm);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto t = random_tuple(k, g.order(), rng);
      std::vector<Vertex> pt;
      for (Vertex v : t) pt.push_back(perm[v]);
      CHECK(atomic_type(g, t) == atomic_type(pg, pt));
    }
  }
}

TEST_CASE("equal atomic types iff induced isomorphism") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_labelled_graph(uniform_index(rng, 1, 8), 0.5, 1, rng);
    const Graph h = random_labelled_graph(uniform_index(rng, 1, 8), 0.5, 1, rng);
    const std::size_t k = uniform_index(rng, 1, 4);
    for (int rep = 0; rep < 10; ++rep) {
      const auto v = random_tuple(k, g.order(), rng);
      const auto w = random_tuple(k, h.order(), rng);
      CHECK((atomic_type(g, v) == atomic_type(h, w)) == induced_iso(g, v, h, w));
    }
  }
}

TEST_CASE("refinement order") {
  Colouring a{1, 4, 0, {0, 1, 2, 3}};
  Colouring b{1, 4, 0, {5, 5, 5, 5}};
  CHECK(refines(a, a));
  CHECK(equivalent(a, a));
  CHECK(refines(a, b));
  CHECK_FALSE(refines(b, a));
  CHECK_FALSE(equivalent(a, b));
  Colouring other{2, 4, 0, std::vector<ColourId>(16, 0)};
  CHECK_THROWS_AS(refines(a, other), ColouringMismatch);

  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto rnd = [&] {
      Colouring c{1, 6, 0, std::vector<ColourId>(6)};
      for (auto& x : c.ids) x = static_cast<ColourId>(uniform_index(rng, 0, 3));
      return c;
    };
    const auto x = rnd(), y = rnd(), z = rnd();
    if (refines(x, y) && refines(y, z)) CHECK(refines(x, z));
    CHECK(equivalent(x, y) == equivalent(y, x));
    if (equivalent(x, y) && equivalent(y, z)) CHECK(equivalent(x, z));
  }
}

TEST_CASE("tuple indexing is mixed radix, first component most significant") {
  Colouring c{3, 5, 0, std::vector<ColourId>(125, 0)};
  const Vertex t[3] = {1, 2, 3};
  CHECK(c.index(t) == 1 * 25 + 2 * 5 + 3);
  CHECK(c.tuple(38) == std::vector<Vertex>{1, 2, 3});
}

TEST_CASE("hat invariant of a one-vertex colouring") {
  Colouring c{1, 1, 0, {42}};
  const auto h = hat_invariant(c);
  CHECK(h.order() == 1);
  CHECK(h.count(42) == 1);
}

TEST_CASE("generators") {
  const Graph c6 = cycle(6);
  CHECK(c6.order() == 6);
  CHECK(c6.edge_count() == 6);
  CHECK(degree_multiset(c6) == std::vector<std::size_t>(6, 2));

  for (const Graph& g : {rook4x4(), shrikhande()}) {
    CHECK(g.order() == 16);
    CHECK(g.edge_count() == 48);
    CHECK(is_srg(g, 6, 2, 2));
  }

  const auto [a, b] = chorded_hexagon_pair();
  CHECK(a.order() == 6);
  CHECK(b.order() == 6);
  CHECK(degree_multiset(a) == std::vector<std::size_t>{2, 2, 2, 2, 3, 3});
  CHECK(degree_multiset(a) == degree_multiset(b));

  const Graph s = star(4);
  CHECK(s.degree(0) == 3);
  CHECK(s.edge_count() == 3);

  const Graph u = disjoint_union(complete(3), complete(3));
  CHECK(u.order() == 6);
  CHECK(u.edge_count() == 6);
  CHECK_FALSE(u.adjacent(0, 3));

  CHECK_THROWS_AS(cycle(2), GraphError);
  CHECK_THROWS_AS(gnp(5, 1.5, 0), GraphError);
  CHECK_THROWS_AS(complete(0), GraphError);

  CHECK(gnp(10, 0.0, 1).edge_count() == 0);
  CHECK(gnp(10, 1.0, 1).edge_count() == 45);
  CHECK(gnp(200, 0.3, 9) == gnp(200, 0.3, 9));
  const Graph big = gnp(2000, 0.01, 3);
  const double expected = 0.01 * 2000 * 1999 / 2;
  CHECK(big.edge_count() > expected * 0.9);
  CHECK(big.edge_count() < expected * 1.1);

  const Graph r = random_regular(10, 3, 4);
  CHECK(degree_multiset(r) == std::vector<std::size_t>(10, 3));
}

TEST_CASE("every generator output is simple and symmetric") {
  Rng rng(3);
  std::vector<Graph> gs = {cycle(7), complete(5), star(6), rook4x4(), shrikhande(),
                           gnp(60, 0.2, 1), random_regular(12, 5, 2)};
  for (const Graph& g : gs)
    for (Vertex u = 0; u < g.order(); ++u) {
      CHECK_FALSE(g.adjacent(u, u));
      for (Vertex v : g.neighbours(u)) CHECK(g.adjacent(v, u));
    }
}

TEST_CASE("graph text format") {
  const Graph k2 = read_graph("p graph 2 0\ne 1 2\n");
  CHECK(k2 == complete(2));
  const Graph l = read_graph("p graph 1 1\nl 1 1\n");
  CHECK(l.order() == 1);
  CHECK(l.has_label(0, 0));

  CHECK(read_graph("c hello\n\np graph 3 0\r\ne 3 1\n").adjacent(0, 2));

  auto line_of = [](const char* text) {
    try {
      read_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{999};
  };
  CHECK(line_of("p graph 2 0\ne 1 1\n") == 2);
  CHECK(line_of("p graph 2 0\ne 1 2\ne 2 1\n") == 3);
  CHECK(line_of("p graph 2 0\n\ne 1 3\n") == 3);
  CHECK(line_of("e 1 2\n") == 1);
  CHECK(line_of("p graph 2 0\nq\n") == 2);
  CHECK(line_of("p graph 2 1\nl 1 2\n") == 2);
  CHECK(line_of("") == 0);

  const std::string text = "p graph 4 2\ne 3 1\ne 1 2\nl 2 1\nl 1 2\n";
  const std::string normal = "p graph 4 2\ne 3 1\ne 1 2\nl 1 2\nl 2 1\n";
  CHECK(write_graph(read_graph(text)) == normal);
  CHECK(write_graph(read_graph(normal)) == normal);
}

TEST_CASE("corpus files round-trip") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(WLGNN_CORPUS_DIR)) {
    if (entry.path().extension() != ".gr") continue;
    const Graph g = read_graph_file(entry.path());
    const std::string once = write_graph(g);
    CHECK(write_graph(read_graph(once)) == once);
    CHECK(read_graph(once) == g);
    ++seen;
  }
  CHECK(seen > 0);
}
