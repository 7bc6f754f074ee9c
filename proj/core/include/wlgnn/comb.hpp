#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wlgnn/rational.hpp"

namespace wlgnn {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Activation { LSig, ReLU, Sig, Tanh, Identity };

std::string activation_name(Activation a);
Activation parse_activation(const std::string& name);

/// sigma(A x + b).
struct AffineStage {
  Matrix A;
  RationalVector b;
  Activation activation = Activation::Identity;
};

/// Exact lookup table. Not a neural network; models containing one are
/// flagged as such when written out.
struct OracleStage {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::map<RationalVector, RationalVector, RationalVectorLess> entries;
  std::optional<RationalVector> fallback;
};

/// Programmatic oracle identified by name and string parameters. It may keep
/// state (for example a lazily grown index), which is serialised as rows of
/// strings so that a reloaded model continues where it stopped.
class Builtin {
 public:
  virtual ~Builtin() = default;
  virtual std::string name() const = 0;
  virtual std::size_t in_dim() const = 0;
  virtual std::size_t out_dim() const = 0;
  virtual std::map<std::string, std::string> params() const = 0;
  virtual std::vector<std::vector<std::string>> state() const { return {}; }
  /// Stateful builtins see inputs in a fixed order (vertex order), so runs
  /// stay reproducible; the executor does not parallelise over them.
  virtual bool stateful() const { return false; }
  virtual RationalVector apply(const RationalVector& x) = 0;
  virtual std::vector<double> apply(const std::vector<double>& x);
};

struct BuiltinStage {
  std::shared_ptr<Builtin> impl;
};

using Stage = std::variant<AffineStage, OracleStage, BuiltinStage>;

/// Combination function: stages applied left to right.
struct Comb {
  std::vector<Stage> stages;

  std::size_t in_dim() const;
  std::size_t out_dim() const;
  /// True when every stage is affine (an FNN).
  bool is_fnn() const;
  bool stateful() const;
  /// Throws ModelError when consecutive stage dimensions do not chain.
  void validate() const;

  RationalVector apply(const RationalVector& x) const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

Comb affine_comb(Matrix A, RationalVector b, Activation act);

/// Factory for builtins by name, used when loading models.
using BuiltinFactory = std::function<std::shared_ptr<Builtin>(
    const std::map<std::string, std::string>& params,
    const std::vector<std::vector<std::string>>& state)>;
void register_builtin(const std::string& name, BuiltinFactory factory);
std::shared_ptr<Builtin> make_builtin(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const std::vector<std::vector<std::string>>& state = {});

Rational apply_activation(Activation a, const Rational& x);
double apply_activation(Activation a, double x);

}  // namespace wlgnn
