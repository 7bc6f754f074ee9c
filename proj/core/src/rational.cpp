#include "wlgnn/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace wlgnn {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::string_view body = s;
  bool negative = false;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw bad();
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q = Rational(n, d);
    q.canonicalize();
  } else {
    long exp10 = 0;
    std::string_view mant = body;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view ex = body.substr(e + 1);
      mant = body.substr(0, e);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
        eneg = ex[0] == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) throw bad();
      exp10 = std::stol(std::string(ex)) * (eneg ? -1 : 1);
    }
    std::string digits;
    if (auto dot = mant.find('.'); dot != std::string_view::npos) {
      const auto ip = mant.substr(0, dot), fp = mant.substr(dot + 1);
      if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
          (!fp.empty() && !all_digits(fp)))
        throw bad();
      digits = std::string(ip) + std::string(fp);
      exp10 -= static_cast<long>(fp.size());
    } else {
      if (!all_digits(mant)) throw bad();
      digits = std::string(mant);
    }
    mpz_class n(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    q = exp10 >= 0 ? Rational(n * scale) : Rational(n, scale);
    q.canonicalize();
  }
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);  // mpq_set_d is exact
}

Rational pow2(long e) {
  Rational q(1);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  return q;
}

Rational power(unsigned long base, long e) {
  if (base == 0) throw std::invalid_argument("power: base must be positive");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, static_cast<unsigned long>(std::labs(e)));
  return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

bool RationalVectorLess::operator()(const RationalVector& a, const RationalVector& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

Matrix Matrix::identity(std::size_t n, const Rational& scale) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
  return m;
}

std::vector<std::uint32_t> pow2_digits(const mpz_class& n, unsigned bits) {
  if (sgn(n) < 0) throw std::invalid_argument("pow2_digits: negative input");
  if (bits == 0 || bits > 31) throw std::invalid_argument("pow2_digits: bad digit width");
  std::vector<std::uint32_t> out;
  const std::size_t total = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (sgn(n) == 0) return out;
  out.assign((total + bits - 1) / bits, 0);
  const mp_size_t limbs = mpz_size(n.get_mpz_t());
  constexpr unsigned kLimbBits = sizeof(mp_limb_t) * 8;
  for (mp_size_t l = 0; l < limbs; ++l) {
    mp_limb_t word = mpz_getlimbn(n.get_mpz_t(), l);
    for (unsigned b = 0; word != 0 && b < kLimbBits; ++b, word >>= 1)
      if (word & 1) {
        const std::size_t bit = static_cast<std::size_t>(l) * kLimbBits + b;
        out[bit / bits] |= std::uint32_t{1} << (bit % bits);
      }
  }
  return out;
}

}  // namespace wlgnn
