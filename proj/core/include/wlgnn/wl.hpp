#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlgnn/colouring.hpp"
#include "wlgnn/graph.hpp"
#include "wlgnn/interner.hpp"

namespace wlgnn {

enum class Algorithm { ColourRefinement, WL, OWL };

std::string algorithm_name(Algorithm a, std::size_t k);

/// n^k exceeded the configured tuple cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads WLGNN_BUDGET_TUPLES, falling back to 10^7.
std::size_t default_tuple_budget();

struct WlOptions {
  /// Round cap; nullopt runs until the (joint) partition is stable.
  std::optional<std::size_t> max_rounds;
  /// When false, exactly *max_rounds rounds are computed even past stability,
  /// which is what cross-graph comparisons at a fixed round need.
  bool stop_when_stable = true;
  ColourInterner* interner = nullptr;  // null selects ColourInterner::global()
  std::size_t tuple_budget = default_tuple_budget();
};

struct WlRun {
  Algorithm algorithm = Algorithm::ColourRefinement;
  std::size_t k = 1;
  std::vector<Colouring> rounds;  // chi^0 .. chi^T
  /// Least t with chi^{t+1} equivalent to chi^t, when it was observed.
  std::optional<std::size_t> stable_round;
  /// True when the round after stable_round was computed and compared.
  bool stability_verified = false;
  const ColourInterner* interner = nullptr;
  /// Runs produced by one run_joint call share a batch number. joint_stable
  /// records that the union partition of the batch had stopped splitting.
  std::uint64_t batch = 0;
  bool joint_stable = false;

  std::size_t last_round() const { return rounds.size() - 1; }
  const Colouring& final() const { return rounds.back(); }
  const Colouring& at(std::size_t t) const;
};

/// Runs one algorithm on several structures in lockstep with a shared
/// interner. Without a round cap it stops once the union of all partitions
/// stops splitting, so every run ends at the same round and ids are directly
/// comparable between graphs.
std::vector<WlRun> run_joint(Algorithm a, std::size_t k, std::span<const Graph* const> graphs,
                             const WlOptions& opt = {});
std::vector<WlRun> run_joint(Algorithm a, std::size_t k,
                             std::span<const BinaryStructure* const> structures,
                             const WlOptions& opt = {});

WlRun colour_refinement(const Graph& g, const WlOptions& opt = {});
WlRun colour_refinement(const BinaryStructure& s, const WlOptions& opt = {});
WlRun wl(const Graph& g, std::size_t k, const WlOptions& opt = {});
WlRun wl(const BinaryStructure& s, std::size_t k, const WlOptions& opt = {});
WlRun owl(const Graph& g, std::size_t k, const WlOptions& opt = {});
WlRun owl(const BinaryStructure& s, std::size_t k, const WlOptions& opt = {});

/// Colours of tuple in run a and tuple2 in run b at round t differ.
bool distinguishes_vertices(const WlRun& a, std::span<const Vertex> tuple, const WlRun& b,
                            std::span<const Vertex> tuple2, std::size_t t);
/// Hat multisets at round t differ.
bool distinguishes_graphs(const WlRun& a, const WlRun& b, std::size_t t);

/// Convenience: joint run on (g, h); t = nullopt compares stable colourings.
bool distinguishes_graphs(Algorithm a, std::size_t k, const Graph& g, const Graph& h,
                          std::optional<std::size_t> t = std::nullopt,
                          ColourInterner* interner = nullptr);

}  // namespace wlgnn
