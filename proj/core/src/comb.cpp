#include "wlgnn/comb.hpp"

#include <cmath>
#include <mutex>

namespace wlgnn {

namespace detail {
void register_construction_builtins();
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::LSig: return "lsig";
    case Activation::ReLU: return "relu";
    case Activation::Sig: return "sig";
    case Activation::Tanh: return "tanh";
    case Activation::Identity: return "identity";
  }
  return "?";
}

Activation parse_activation(const std::string& name) {
  for (Activation a : {Activation::LSig, Activation::ReLU, Activation::Sig, Activation::Tanh,
                       Activation::Identity})
    if (activation_name(a) == name) return a;
  throw ModelError("unknown activation '" + name + "'");
}

Rational apply_activation(Activation a, const Rational& x) {
  switch (a) {
    case Activation::LSig:
      if (sgn(x) <= 0) return 0;
      return x >= 1 ? Rational(1) : x;
    case Activation::ReLU: return sgn(x) <= 0 ? Rational(0) : x;
    case Activation::Identity: return x;
    case Activation::Sig:
    case Activation::Tanh:
      throw ModelError("activation " + activation_name(a) + " has no exact rational form");
  }
  return x;
}

double apply_activation(Activation a, double x) {
  switch (a) {
    case Activation::LSig: return std::min(std::max(x, 0.0), 1.0);
    case Activation::ReLU: return std::max(x, 0.0);
    case Activation::Sig: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Tanh: return std::tanh(x);
    case Activation::Identity: return x;
  }
  return x;
}

std::vector<double> Builtin::apply(const std::vector<double>&) {
  throw ModelError("builtin '" + name() + "' is only defined in rational mode");
}

namespace {

std::size_t stage_in(const Stage& s) {
  return std::visit(
      [](const auto& st) -> std::size_t {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AffineStage>) return st.A.cols;
        else if constexpr (std::is_same_v<T, OracleStage>) return st.in_dim;
        else return st.impl->in_dim();
      },
      s);
}

std::size_t stage_out(const Stage& s) {
  return std::visit(
      [](const auto& st) -> std::size_t {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, AffineStage>) return st.A.rows;
        else if constexpr (std::is_same_v<T, OracleStage>) return st.out_dim;
        else return st.impl->out_dim();
      },
      s);
}

void check_dim(std::size_t got, std::size_t want) {
  if (got != want)
    throw ModelError("dimension mismatch: got " + std::to_string(got) + ", expected " +
                     std::to_string(want));
}

RationalVector apply_stage(const Stage& s, const RationalVector& x) {
  check_dim(x.size(), stage_in(s));
  if (const auto* a = std::get_if<AffineStage>(&s)) {
    RationalVector y(a->A.rows);
    for (std::size_t r = 0; r < a->A.rows; ++r) {
      Rational acc = a->b[r];
      for (std::size_t c = 0; c < a->A.cols; ++c)
        if (sgn(a->A(r, c)) != 0 && sgn(x[c]) != 0) acc += a->A(r, c) * x[c];
      y[r] = apply_activation(a->activation, acc);
    }
    return y;
  }
  if (const auto* o = std::get_if<OracleStage>(&s)) {
    if (auto it = o->entries.find(x); it != o->entries.end()) return it->second;
    if (o->fallback) return *o->fallback;
    std::string key;
    for (const auto& v : x) key += (key.empty() ? "" : ",") + to_string(v);
    throw ModelError("oracle table has no entry for (" + key + ") and no default");
  }
  return std::get<BuiltinStage>(s).impl->apply(x);
}

std::vector<double> apply_stage(const Stage& s, const std::vector<double>& x) {
  check_dim(x.size(), stage_in(s));
  if (const auto* a = std::get_if<AffineStage>(&s)) {
    std::vector<double> y(a->A.rows);
    for (std::size_t r = 0; r < a->A.rows; ++r) {
      double acc = a->b[r].get_d();
      for (std::size_t c = 0; c < a->A.cols; ++c) acc += a->A(r, c).get_d() * x[c];
      y[r] = apply_activation(a->activation, acc);
    }
    return y;
  }
  if (const auto* o = std::get_if<OracleStage>(&s)) {
    RationalVector key;
    for (double v : x) key.push_back(exact_from_double(v));
    RationalVector out;
    if (auto it = o->entries.find(key); it != o->entries.end()) out = it->second;
    else if (o->fallback) out = *o->fallback;
    else throw ModelError("oracle table has no entry for a float input and no default");
    std::vector<double> y;
    for (const auto& v : out) y.push_back(v.get_d());
    return y;
  }
  return std::get<BuiltinStage>(s).impl->apply(x);
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, BuiltinFactory>& registry() {
  static std::map<std::string, BuiltinFactory> r;
  return r;
}

}  // namespace

std::size_t Comb::in_dim() const {
  if (stages.empty()) throw ModelError("empty combination function");
  return stage_in(stages.front());
}

std::size_t Comb::out_dim() const {
  if (stages.empty()) throw ModelError("empty combination function");
  return stage_out(stages.back());
}

bool Comb::is_fnn() const {
  for (const auto& s : stages)
    if (!std::holds_alternative<AffineStage>(s)) return false;
  return true;
}

bool Comb::stateful() const {
  for (const auto& s : stages)
    if (const auto* b = std::get_if<BuiltinStage>(&s); b && b->impl && b->impl->stateful()) return true;
  return false;
}

void Comb::validate() const {
  if (stages.empty()) throw ModelError("empty combination function");
  for (const auto& s : stages) {
    if (const auto* a = std::get_if<AffineStage>(&s)) {
      if (a->A.data.size() != a->A.rows * a->A.cols) throw ModelError("malformed matrix");
      if (a->b.size() != a->A.rows) throw ModelError("bias length differs from matrix rows");
    } else if (const auto* o = std::get_if<OracleStage>(&s)) {
      for (const auto& [k, v] : o->entries)
        if (k.size() != o->in_dim || v.size() != o->out_dim)
          throw ModelError("oracle entry has the wrong dimension");
      if (o->fallback && o->fallback->size() != o->out_dim)
        throw ModelError("oracle default has the wrong dimension");
    } else if (!std::get<BuiltinStage>(s).impl) {
      throw ModelError("builtin stage without implementation");
    }
  }
  for (std::size_t i = 0; i + 1 < stages.size(); ++i)
    if (stage_out(stages[i]) != stage_in(stages[i + 1]))
      throw ModelError("stage " + std::to_string(i) + " outputs " +
                       std::to_string(stage_out(stages[i])) + " values but stage " +
                       std::to_string(i + 1) + " expects " + std::to_string(stage_in(stages[i + 1])));
}

RationalVector Comb::apply(const RationalVector& x) const {
  RationalVector v = x;
  for (const auto& s : stages) v = apply_stage(s, v);
  return v;
}

std::vector<double> Comb::apply(const std::vector<double>& x) const {
  std::vector<double> v = x;
  for (const auto& s : stages) v = apply_stage(s, v);
  return v;
}

Comb affine_comb(Matrix A, RationalVector b, Activation act) {
  Comb c;
  c.stages.push_back(AffineStage{std::move(A), std::move(b), act});
  return c;
}

void register_builtin(const std::string& name, BuiltinFactory factory) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(factory);
}

std::shared_ptr<Builtin> make_builtin(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const std::vector<std::vector<std::string>>& state) {
  static std::once_flag once;
  std::call_once(once, [] { detail::register_construction_builtins(); });
  BuiltinFactory f;
  {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end()) throw ModelError("unknown builtin '" + name + "'");
    f = it->second;
  }
  return f(params, state);
}

}  // namespace wlgnn
