#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wlgnn/gnn.hpp"

namespace wlgnn {

/// A graph together with the vertices the query selects.
struct QueryCase {
  Graph graph;
  std::vector<bool> members;
};

struct ExpressOptions {
  double epsilon = 0.25;
  /// Trials for models with random initialisation (ignored otherwise).
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  /// Empirical failure probability below which an RNI model counts as expressing.
  double delta = 0.05;
};

struct VertexMargin {
  std::size_t graph = 0;
  Vertex vertex = 0;
  bool member = false;
  /// Output of the (first) deterministic run, or the first trial.
  double output = 0.0;
  std::optional<Rational> exact_output;
  /// |output - [member]|.
  double deviation = 0.0;
  /// Fraction of trials in which this vertex was on the right side of epsilon.
  double success_rate = 0.0;
};

struct ExpressReport {
  bool randomised = false;
  double epsilon = 0.0;
  /// Largest deviation seen (deterministic models: the least epsilon that works).
  double achieved_epsilon = 0.0;
  /// min output over members minus max output over non-members.
  std::optional<double> margin;
  std::size_t trials = 0;
  std::size_t failed_trials = 0;
  double delta_hat = 0.0;
  std::pair<double, double> delta_interval{0.0, 0.0};
  bool expresses = false;
  std::vector<VertexMargin> vertices;
};

/// Checks that the vertex output xi satisfies xi >= 1 - eps on members and
/// xi <= eps elsewhere. Models with rniPadding > 0 are rerun with fresh
/// seeds and judged by the empirical probability that some vertex fails.
/// Throws std::invalid_argument unless 0 <= eps < 1/2.
ExpressReport expresses_query_check(const GnnModel& model, const std::vector<QueryCase>& cases,
                                    const ExpressOptions& opt = {});

/// 95% (z = 1.96) Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t n, double z = 1.96);

/// Seed for trial t of graph g, derived from a base seed.
std::uint64_t trial_seed(std::uint64_t base, std::size_t trial, std::size_t graph);

}  // namespace wlgnn
