#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wlgnn {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Accepts "p/q", integers, and finite decimals such as "-0.125" or "1e-3",
/// all converted exactly. Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
/// "p" for integers, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& q);
/// Exact value of a finite double.
Rational exact_from_double(double x);

/// 2^e for any integer e.
Rational pow2(long e);
/// base^e for integer base >= 1 and any integer e.
Rational power(unsigned long base, long e);

/// Lexicographic comparison of equal-length or prefix vectors.
struct RationalVectorLess {
  bool operator()(const RationalVector& a, const RationalVector& b) const;
};

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static Matrix identity(std::size_t n, const Rational& scale = 1);

  Rational& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Base-2^bits digits of a non-negative integer, least significant first.
std::vector<std::uint32_t> pow2_digits(const mpz_class& n, unsigned bits);

}  // namespace wlgnn
