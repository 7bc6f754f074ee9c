#include "wlgnn/formula_pool.hpp"

#include "wlgnn/sexpr.hpp"

namespace wlgnn {
namespace {

Formula atom_in(Rng& rng, const std::string& var, std::size_t labels) {
  if (labels == 0 || uniform_index(rng, 0, 3) == 0) return top(var);
  return label(uniform_index(rng, 0, labels - 1), var);
}

Formula gen(Rng& rng, const std::string& var, std::size_t rank, std::size_t labels,
            std::size_t max_p, std::size_t depth) {
  const std::size_t choice = uniform_index(rng, 0, depth > 4 ? 0 : 5);
  const std::string other = var == "x" ? "y" : "x";
  switch (choice) {
    case 0: return atom_in(rng, var, labels);
    case 1: return negate(gen(rng, var, rank, labels, max_p, depth + 1));
    case 2:
      return conj({gen(rng, var, rank, labels, max_p, depth + 1),
                   gen(rng, var, rank, labels, max_p, depth + 1)});
    case 3:
      return disj({gen(rng, var, rank, labels, max_p, depth + 1),
                   gen(rng, var, rank, labels, max_p, depth + 1)});
    default:
      if (rank == 0) return atom_in(rng, var, labels);
      {
        const std::size_t p = uniform_index(rng, 1, max_p);
        Formula inner = gen(rng, other, rank - 1, labels, max_p, depth + 1);
        Formula g = uniform_index(rng, 0, 1) ? edge(var, other) : edge(other, var);
        return exists_ge(p, other, conj({g, inner}));
      }
  }
}

}  // namespace

Formula random_gc2_formula(Rng& rng, const std::string& var, std::size_t max_rank,
                           std::size_t labels, std::size_t max_threshold) {
  return gen(rng, var, max_rank, labels, max_threshold, 0);
}

Formula example_busy_neighbour_formula() {
  return parse_formula(
      "(not (existsGE 2 y (and (E x y) (existsGE 11 x (and (E y x) (P 1 x))))))");
}

std::vector<Formula> seed_gc2_formulas(std::size_t labels) {
  std::vector<std::string> texts = {
      "(existsGE 1 y (and (E x y) (true y)))",
      "(existsGE 2 y (and (E x y) (true y)))",
      "(existsGE 3 y (and (E x y) (true y)))",
      "(not (existsGE 3 y (and (E x y) (true y))))",
      "(existsGE 2 y (and (E x y) (existsGE 2 x (and (E y x) (true x)))))",
      "(existsGE 1 y (and (E x y) (not (existsGE 2 x (and (E y x) (true x))))))",
      "(and (existsGE 2 y (and (E x y) (true y))) (not (existsGE 3 y (and (E x y) (true y)))))",
      "(existsGE 1 y (and (E x y) (existsGE 1 x (and (E y x) (existsGE 3 y (and (E x y) (true y)))))))",
      "(or (not (existsGE 1 y (and (E x y) (true y)))) (existsGE 4 y (and (E y x) (true y))))",
      "(= x x)",
      "(not (E x x))",
  };
  if (labels >= 1) {
    texts.insert(texts.end(), {
        "(P 1 x)",
        "(not (P 1 x))",
        "(existsGE 1 y (and (E x y) (P 1 y)))",
        "(existsGE 2 y (and (E x y) (not (P 1 y))))",
        "(and (P 1 x) (existsGE 1 y (and (E x y) (P 1 y))))",
        "(existsGE 1 y (and (E x y) (existsGE 1 x (and (E y x) (P 1 x)))))",
        "(not (existsGE 2 y (and (E x y) (existsGE 2 x (and (E y x) (P 1 x))))))",
    });
  }
  if (labels >= 2) {
    texts.insert(texts.end(), {
        "(or (P 1 x) (P 2 x))",
        "(existsGE 1 y (and (E x y) (and (P 1 y) (P 2 y))))",
        "(existsGE 2 y (and (E x y) (or (P 2 y) (existsGE 1 x (and (E y x) (P 1 x))))))",
    });
  }
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parse_formula(t));
  out.push_back(example_busy_neighbour_formula());
  return out;
}

Formula distance_formula(std::size_t j, const std::string& a, const std::string& b,
                         const std::string& spare) {
  if (j == 0) return disj({var_eq(a, b), edge(a, b)});
  return exists(spare, conj({distance_formula(j - 1, a, spare, b),
                             distance_formula(j - 1, spare, b, a)}));
}

}  // namespace wlgnn
