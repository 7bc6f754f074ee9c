#include "wlgnn/wl_gnn.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace wlgnn {

namespace detail {
void register_rni_builtins();
}

namespace {

unsigned log2_exact(unsigned long m) {
  unsigned b = 0;
  while ((1ul << b) < m) ++b;
  return b;
}

std::size_t param_size(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ModelError("builtin parameter '" + key + "' is missing");
  try {
    return std::stoul(it->second);
  } catch (const std::exception&) {
    throw ModelError("builtin parameter '" + key + "' is not a count: " + it->second);
  }
}

// Maps a round-t digit sum z (first coordinate) to m^-(k_{t+1}+j), where j
// numbers the distinct sums of that round in order of first appearance.
// Round t values are m^-(k_t+i) for i in 1..size(t); k_0 and size(0) come
// from the input encoder, later rounds use the fixed capacity.
class WlIndexBuiltin final : public Builtin {
 public:
  WlIndexBuiltin(unsigned long m, std::size_t k0, std::size_t e0, std::size_t cap, std::size_t dim)
      : m_(m), bits_(log2_exact(m)), k0_(k0), e0_(e0), cap_(cap), dim_(dim) {
    if (m < 2 || (1ul << bits_) != m) throw ModelError("wl-index: m must be a power of two >= 2");
    if (dim == 0 || e0 == 0 || cap == 0) throw ModelError("wl-index: dim, e0 and cap must be positive");
  }

  std::string name() const override { return "wl-index"; }
  std::size_t in_dim() const override { return dim_; }
  std::size_t out_dim() const override { return dim_; }
  bool stateful() const override { return true; }
  std::map<std::string, std::string> params() const override {
    return {{"m", std::to_string(m_)},
            {"k0", std::to_string(k0_)},
            {"e0", std::to_string(e0_)},
            {"cap", std::to_string(cap_)},
            {"dim", std::to_string(dim_)}};
  }
  std::vector<std::vector<std::string>> state() const override {
    std::lock_guard lock(mu_);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < tables_.size(); ++t) {
      std::vector<std::pair<std::size_t, const Rational*>> by_index;
      for (const auto& [z, j] : tables_[t]) by_index.emplace_back(j, &z);
      std::sort(by_index.begin(), by_index.end());
      for (const auto& [j, z] : by_index) rows.push_back({std::to_string(t), to_string(*z), std::to_string(j)});
    }
    return rows;
  }

  void restore(const std::vector<std::vector<std::string>>& rows) {
    for (const auto& r : rows) {
      if (r.size() != 3) throw ModelError("wl-index: state rows are [round, value, index]");
      const auto t = std::stoul(r[0]);
      const auto j = std::stoul(r[2]);
      if (j == 0 || j > cap_) throw ModelError("wl-index: stored index out of range");
      if (tables_.size() <= t) tables_.resize(t + 1);
      tables_[t].emplace(parse_rational(r[1]), j);
    }
  }

  RationalVector apply(const RationalVector& x) override {
    if (x.size() != dim_) throw ModelError("wl-index: wrong input dimension");
    for (std::size_t i = 1; i < dim_; ++i)
      if (sgn(x[i]) != 0) throw ModelError("wl-index: feature left X_t x {0}^(q-1): coordinate " + std::to_string(i + 1) + " is nonzero");
    const Rational& z = x[0];
    const std::size_t t = band_of(z);
    std::size_t j;
    {
      std::lock_guard lock(mu_);
      if (tables_.size() <= t) tables_.resize(t + 1);
      auto& table = tables_[t];
      auto it = table.find(z);
      if (it == table.end()) {
        if (table.size() >= cap_)
          throw ModelError("wl-index: round " + std::to_string(t + 1) + " needs more than " +
                           std::to_string(cap_) + " distinct values; raise the round capacity");
        it = table.emplace(z, table.size() + 1).first;
      }
      j = it->second;
    }
    RationalVector y(dim_, 0);
    y[0] = pow2(-static_cast<long>(bits_ * (offset(t + 1) + j)));
    return y;
  }

 private:
  std::size_t offset(std::size_t t) const { return t == 0 ? k0_ : k0_ + e0_ + (t - 1) * cap_; }
  std::size_t band_size(std::size_t t) const { return t == 0 ? e0_ : cap_; }

  // Round whose values z is a digit sum of; also checks z lies on that
  // round's grid, which is the confinement invariant.
  std::size_t band_of(const Rational& z) const {
    if (sgn(z) <= 0 || z >= 1) throw ModelError("wl-index: value " + to_string(z) + " is outside (0,1)");
    const mpz_class& den = z.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1) throw ModelError("wl-index: value is not a power-of-m fraction");
    const long D = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    const long nb = static_cast<long>(mpz_sizeinbase(z.get_num().get_mpz_t(), 2));
    const long b = bits_;
    long K = (D - nb + 1 + b - 1) / b;  // least K with m^-K <= z, up to one step
    if (K > 0 && z >= pow2(-b * (K - 1))) --K;
    if (K <= static_cast<long>(k0_))
      throw ModelError("wl-index: value " + to_string(z) + " is larger than every encoded round");
    std::size_t t = 0;
    const auto uk = static_cast<std::size_t>(K);
    if (uk > k0_ + e0_) t = 1 + (uk - k0_ - e0_ - 1) / cap_;
    if (D > b * static_cast<long>(offset(t) + band_size(t)))
      throw ModelError("wl-index: value " + to_string(z) + " is off the round-" + std::to_string(t) + " grid");
    return t;
  }

  unsigned long m_;
  unsigned bits_;
  std::size_t k0_, e0_, cap_, dim_;
  mutable std::mutex mu_;
  std::vector<std::map<Rational, std::size_t>> tables_;
};

// Shared shape: recurrent layer whose comb is an affine sum of channels
// followed by wl-index, plus an oracle input encoder.
GnnModel recurrent_index_model(std::size_t input_dim, std::size_t q, unsigned long m,
                               const std::vector<std::pair<RationalVector, std::size_t>>& encoder_keys,
                               std::size_t k0, const std::vector<Rational>& channel_coeffs,
                               const WlGnnOptions& opt) {
  GnnModel model;
  model.input_dim = input_dim;
  model.mode = NumericMode::Rational;
  const unsigned b = log2_exact(m);

  OracleStage enc;
  enc.in_dim = input_dim;
  enc.out_dim = q;
  for (const auto& [key, i] : encoder_keys) {
    RationalVector v(q, 0);
    v[0] = pow2(-static_cast<long>(b * (k0 + i)));
    enc.entries[key] = std::move(v);
  }
  Comb encoder;
  encoder.stages.push_back(std::move(enc));
  model.input_encoder = std::move(encoder);

  Matrix A(q, q * channel_coeffs.size());
  for (std::size_t c = 0; c < channel_coeffs.size(); ++c)
    for (std::size_t i = 0; i < q; ++i) A(i, c * q + i) = channel_coeffs[c];
  Comb comb;
  comb.stages.push_back(AffineStage{std::move(A), RationalVector(q, 0), Activation::Identity});
  comb.stages.push_back(BuiltinStage{std::make_shared<WlIndexBuiltin>(m, k0, encoder_keys.size(),
                                                                      opt.round_capacity, q)});
  GnnLayer layer;
  layer.in_dim = q;
  layer.out_dim = q;
  layer.comb = std::move(comb);
  model.layers.push_back(std::move(layer));
  model.recurrent = true;
  model.iter.kind = IterPolicy::Kind::GraphOrder;
  return model;
}

// Least k with m^-k <= 1/(2^l + 1).
std::size_t initial_offset(unsigned long m, std::size_t labels) {
  const Rational lo(1, (1ul << labels) + 1);
  std::size_t k = 0;
  Rational p = 1;
  while (p > lo) {
    p /= m;
    ++k;
  }
  return k;
}

GnnModel build_refinement_gnn(std::size_t n, std::size_t labels, bool global, const WlGnnOptions& opt) {
  if (n == 0) throw ModelError("graph-order bound must be at least 1");
  if (labels > 16) throw ModelError("at most 16 labels are supported");
  const std::size_t q = std::max<std::size_t>(labels, 1);
  const unsigned long m = next_pow2(global ? 2 * n * n + 2 * n : 2 * n);
  // Labels read as integers in 0..2^l-1, first bit most significant; the
  // injection (1+int)/(2^l+1) into (0,1) is enumerated in the same order.
  std::vector<std::pair<RationalVector, std::size_t>> keys;
  for (std::size_t code = 0; code < (1ul << labels); ++code) {
    RationalVector key(q, 0);
    for (std::size_t i = 0; i < labels; ++i) key[i] = (code >> (labels - 1 - i)) & 1u;
    keys.emplace_back(std::move(key), code + 1);
  }
  std::vector<Rational> coeffs{1, 2};
  if (global) coeffs.emplace_back(static_cast<unsigned long>(2 * n));
  GnnModel model = recurrent_index_model(q, q, m, keys, initial_offset(m, labels), coeffs, opt);
  model.layers.front().global_readout = global;
  return model;
}

}  // namespace

unsigned long next_pow2(unsigned long x) {
  unsigned long p = 1;
  while (p < x) p <<= 1;
  return p;
}

GnnModel build_wl_gnn(std::size_t n, std::size_t labels, const WlGnnOptions& opt) {
  return build_refinement_gnn(n, labels, false, opt);
}

GnnModel build_wl1_gnn(std::size_t n, std::size_t labels, const WlGnnOptions& opt) {
  return build_refinement_gnn(n, labels, true, opt);
}

GnnModel build_kgnn_wl(std::size_t n, std::size_t k, std::size_t labels, std::size_t rounds,
                       const WlGnnOptions& opt) {
  if (n == 0 || k == 0) throw ModelError("n and k must be at least 1");
  const std::size_t w = k * (k - 1) + k * labels;
  if (w > 16) throw ModelError("atomic types are too wide for a one-hot input");
  const std::size_t types = std::size_t{1} << w;
  mpz_class nk = 1;
  for (std::size_t i = 0; i < k; ++i) nk *= static_cast<unsigned long>(n);
  if (!nk.fits_ulong_p() || nk > (1ul << 40)) throw ModelError("n^k is too large");
  const unsigned long m = next_pow2(2 * nk.get_ui());
  std::vector<std::pair<RationalVector, std::size_t>> keys;
  for (std::size_t th = 0; th < types; ++th) {
    RationalVector key(types, 0);
    key[th] = 1;
    keys.emplace_back(std::move(key), th + 1);
  }
  GnnModel model = recurrent_index_model(types, 1, m, keys, 1, {1, 1}, opt);
  Rational c = 2;
  for (std::size_t i = 0; i < k; ++i) {
    model.layers.front().messages.push_back(Matrix::identity(1, c));
    c *= static_cast<unsigned long>(n);
  }
  model.iter = IterPolicy{IterPolicy::Kind::Constant, rounds};
  return model;
}

namespace detail {

void register_construction_builtins() {
  register_builtin("wl-index", [](const auto& p, const auto& state) {
    auto b = std::make_shared<WlIndexBuiltin>(param_size(p, "m"), param_size(p, "k0"), param_size(p, "e0"),
                                              param_size(p, "cap"), param_size(p, "dim"));
    b->restore(state);
    return std::shared_ptr<Builtin>(b);
  });
  register_rni_builtins();
}

std::size_t builtin_param(const std::map<std::string, std::string>& p, const std::string& key) {
  return param_size(p, key);
}

}  // namespace detail
}  // namespace wlgnn
