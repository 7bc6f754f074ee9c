#include "wlgnn/rni_triangle.hpp"

namespace wlgnn {
namespace detail {
std::size_t builtin_param(const std::map<std::string, std::string>& p, const std::string& key);
}

namespace {

unsigned bits_of(unsigned long m) {
  unsigned b = 0;
  while ((1ul << b) < m) ++b;
  if ((1ul << b) != m || b == 0) throw ModelError("base must be a power of two >= 2");
  return b;
}

// m^-id for id = floor(r * levels) + 1, r the last self coordinate.
class RniIdBuiltin final : public Builtin {
 public:
  RniIdBuiltin(unsigned long m, std::size_t levels, std::size_t in)
      : m_(m), bits_(bits_of(m)), levels_(levels), in_(in) {
    if (levels == 0 || in == 0) throw ModelError("rni-id: levels and inDim must be positive");
  }
  std::string name() const override { return "rni-id"; }
  std::size_t in_dim() const override { return 2 * in_; }
  std::size_t out_dim() const override { return 1; }
  std::map<std::string, std::string> params() const override {
    return {{"m", std::to_string(m_)}, {"levels", std::to_string(levels_)}, {"inDim", std::to_string(in_)}};
  }
  RationalVector apply(const RationalVector& x) override {
    const Rational& r = x.at(in_ - 1);
    if (sgn(r) < 0 || r >= 1) throw ModelError("rni-id: random coordinate outside [0,1)");
    mpz_class scaled = r.get_num() * static_cast<unsigned long>(levels_);
    mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), r.get_den().get_mpz_t());
    const long id = scaled.get_si() + 1;
    return {pow2(-static_cast<long>(bits_) * id)};
  }

 private:
  unsigned long m_;
  unsigned bits_;
  std::size_t levels_, in_;
};

// Input (e, S, sum e, sum S): 1 when a base-m digit is set in S and in sum S.
class TriangleDecodeBuiltin final : public Builtin {
 public:
  TriangleDecodeBuiltin(unsigned long m, std::size_t levels) : m_(m), bits_(bits_of(m)), levels_(levels) {}
  std::string name() const override { return "triangle-decode"; }
  std::size_t in_dim() const override { return 4; }
  std::size_t out_dim() const override { return 1; }
  std::map<std::string, std::string> params() const override {
    return {{"m", std::to_string(m_)}, {"levels", std::to_string(levels_)}};
  }
  RationalVector apply(const RationalVector& x) override {
    const auto a = digits(x.at(1));
    const auto b = digits(x.at(3));
    for (std::size_t p = 0; p < std::min(a.size(), b.size()); ++p)
      if (a[p] != 0 && b[p] != 0) return {Rational(1)};
    return {Rational(0)};
  }

 private:
  std::vector<std::uint32_t> digits(const Rational& s) const {
    const Rational scaled = s * pow2(static_cast<long>(bits_ * (levels_ + 1)));
    if (scaled.get_den() != 1 || sgn(scaled) < 0) throw ModelError("triangle-decode: input is not an id sum");
    return pow2_digits(scaled.get_num(), bits_);
  }
  unsigned long m_;
  unsigned bits_;
  std::size_t levels_;
};

}  // namespace

GnnModel build_rni_triangle_model(const RniTriangleOptions& opt) {
  GnnModel m;
  m.mode = NumericMode::Rational;
  m.rni_padding = 1;
  m.input_dim = opt.labels + 1;

  GnnLayer ids;
  ids.in_dim = m.input_dim;
  ids.out_dim = 1;
  ids.comb.stages.push_back(BuiltinStage{std::make_shared<RniIdBuiltin>(opt.base, opt.levels, m.input_dim)});
  m.layers.push_back(std::move(ids));

  GnnLayer sums;
  sums.in_dim = 1;
  sums.out_dim = 2;
  sums.comb = affine_comb(Matrix::identity(2), RationalVector(2, 0), Activation::Identity);
  m.layers.push_back(std::move(sums));

  GnnLayer decode;
  decode.in_dim = 2;
  decode.out_dim = 1;
  decode.comb.stages.push_back(BuiltinStage{std::make_shared<TriangleDecodeBuiltin>(opt.base, opt.levels)});
  m.layers.push_back(std::move(decode));
  return m;
}

namespace detail {

void register_rni_builtins() {
  register_builtin("rni-id", [](const auto& p, const auto&) -> std::shared_ptr<Builtin> {
    return std::make_shared<RniIdBuiltin>(builtin_param(p, "m"), builtin_param(p, "levels"),
                                          builtin_param(p, "inDim"));
  });
  register_builtin("triangle-decode", [](const auto& p, const auto&) -> std::shared_ptr<Builtin> {
    return std::make_shared<TriangleDecodeBuiltin>(builtin_param(p, "m"), builtin_param(p, "levels"));
  });
}

}  // namespace detail
}  // namespace wlgnn
