#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wlgnn/comb.hpp"
#include "wlgnn/graph.hpp"
#include "wlgnn/rational.hpp"

namespace wlgnn {

enum class NumericMode { Rational, Float64 };

struct GnnLayer {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  Comb comb;
  bool global_readout = false;
  /// Per-relation message matrices (r x in_dim, shared r). Empty means the
  /// neighbour channel is the plain sum over all relations.
  std::vector<Matrix> messages;

  /// Width of the comb input: self block, neighbour block, optional global block.
  std::size_t comb_in_dim() const;
};

struct IterPolicy {
  enum class Kind { Constant, GraphOrder } kind = Kind::Constant;
  std::size_t count = 1;

  std::size_t rounds(std::size_t n) const { return kind == Kind::GraphOrder ? n : count; }
};

struct GnnModel {
  std::size_t input_dim = 0;
  /// Applied to every initial feature vector before the first layer.
  std::optional<Comb> input_encoder;
  std::vector<GnnLayer> layers;
  /// When set, layers holds exactly one layer applied iter.rounds(n) times.
  bool recurrent = false;
  IterPolicy iter;
  std::optional<Comb> readout;
  /// Applied to the sum of the final (pre-readout) features.
  std::optional<Comb> aggregate_readout;
  NumericMode mode = NumericMode::Rational;
  /// Trailing initial coordinates filled with uniform random draws.
  std::size_t rni_padding = 0;

  /// Dimension chaining checks; throws ModelError.
  void validate() const;
  std::size_t depth(std::size_t n) const;
  /// Output dimension of the last layer (input_dim or encoder output when there are none).
  std::size_t feature_dim() const;
  bool is_fnn() const;
};

/// Exact (rational) or float rows, one per vertex.
struct FeatureMap {
  NumericMode mode = NumericMode::Rational;
  std::size_t dim = 0;
  std::size_t round = 0;
  std::vector<RationalVector> exact;
  std::vector<std::vector<double>> approx;

  std::size_t size() const { return mode == NumericMode::Rational ? exact.size() : approx.size(); }
  /// Row v as doubles, whichever the mode.
  std::vector<double> row_as_double(std::size_t v) const;
  friend bool operator==(const FeatureMap& a, const FeatureMap& b);
};

/// Per-vertex 64-bit draws for the random coordinates. A draw u becomes the
/// rational u / 2^64 or the double built from its top 53 bits.
using RniDraws = std::vector<std::vector<std::uint64_t>>;

/// Draws for n vertices and `coords` coordinates, vertex by vertex, from seed.
RniDraws rni_draws(std::size_t n, std::size_t coords, std::uint64_t seed);
/// perm maps vertices of G to vertices of pi G; the result is the draw table
/// that pi G must use so that vertex perm[v] receives v's draws.
RniDraws permute_draws(const RniDraws& d, std::span<const Vertex> perm);

/// Label bits, zero padding, then rni.size() random coordinates at the end
/// when rni is given (each row must be the same length).
/// Throws ModelError when dim is smaller than the label count plus padding.
FeatureMap initial_features(std::size_t n, const std::vector<std::vector<std::uint8_t>>& label_rows,
                            std::size_t dim, NumericMode mode, const RniDraws* rni = nullptr);
FeatureMap initial_features(const Graph& g, std::size_t dim, NumericMode mode,
                            const RniDraws* rni = nullptr);

/// One aggregate-combine step. Sums over neighbours are formed in a
/// canonical (sorted by value) order in float mode so that vertices with
/// equal neighbour multisets get bitwise equal results.
FeatureMap apply_layer(const GnnLayer& layer, const Graph& g, const FeatureMap& z);
FeatureMap apply_layer(const GnnLayer& layer, const BinaryStructure& s, const FeatureMap& z);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // RNI seed; required when rni_padding > 0 unless draws given
  const RniDraws* draws = nullptr;
  bool keep_trace = false;
  /// Round cap for recurrent models (overrides the iteration policy when smaller).
  std::optional<std::size_t> max_rounds;
};

struct RunResult {
  FeatureMap final_features;
  /// Readout per vertex; equals final_features when there is no readout.
  FeatureMap vertex_output;
  std::optional<std::vector<double>> graph_output_approx;
  std::optional<RationalVector> graph_output_exact;
  /// Features after the encoder (index 0) and after each layer application.
  std::vector<FeatureMap> trace;
};

RunResult run(const GnnModel& model, const Graph& g, const RunOptions& opt = {});
RunResult run(const GnnModel& model, const BinaryStructure& s, const RunOptions& opt = {});

/// k-GNN: the model runs on A_G; initial features are the one-hot atomic
/// types, padded to input_dim. Outputs are indexed like Colouring tuples.
RunResult run_kgnn(const GnnModel& model, const Graph& g, std::size_t k,
                   const RunOptions& opt = {});

/// Class ids by first occurrence of each distinct feature row.
std::vector<std::uint32_t> feature_partition(const FeatureMap& z);

struct RandomModelOptions {
  std::size_t input_dim = 1;
  std::size_t depth = 3;
  std::size_t hidden = 3;
  bool global_readout = false;
  NumericMode mode = NumericMode::Rational;
  Activation activation = Activation::ReLU;
  /// Weights are drawn from {-range, ..., range} / denominator.
  int range = 3;
  int denominator = 2;
  bool aggregate_readout = false;
  /// Relations for message matrices (k-GNN); 0 for plain GNNs.
  std::size_t relations = 0;
};

/// Random-weight affine model, reproducible from the seed.
GnnModel random_model(const RandomModelOptions& opt, std::uint64_t seed);

}  // namespace wlgnn
