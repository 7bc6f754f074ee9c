#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wlgnn/formula.hpp"
#include "wlgnn/random_graphs.hpp"

namespace wlgnn {

/// Random guarded two-variable formula with free variable `var` ("x" or "y"),
/// quantifier rank at most max_rank, labels drawn from 0..labels-1 and
/// counting thresholds from 1..max_threshold.
Formula random_gc2_formula(Rng& rng, const std::string& var, std::size_t max_rank,
                           std::size_t labels, std::size_t max_threshold = 3);

/// Hand-written guarded formulas in x: degree bounds, the at-most-one
/// busy neighbour formula, label tests and small combinations.
std::vector<Formula> seed_gc2_formulas(std::size_t labels);

/// The at-most-one-busy-neighbour formula:
/// not exists^{>=2} y (E(x,y) and exists^{>=11} x (E(y,x) and P_1(x))).
Formula example_busy_neighbour_formula();

/// delta_{2^j}(a, b): distance at most 2^j, written with three variables
/// by reusing the spare one.
Formula distance_formula(std::size_t j, const std::string& a, const std::string& b,
                         const std::string& spare);

}  // namespace wlgnn
