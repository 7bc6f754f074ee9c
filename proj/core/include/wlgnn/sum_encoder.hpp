#pragma once

#include <cstddef>
#include <vector>

#include "wlgnn/rational.hpp"

namespace wlgnn {

/// Injective encoding of multisets of order < m over a finite X in (0,1):
/// x_i (1-based, in the given order) maps to m^(-k-i), where k is the least
/// integer with m^(-k) <= min X. Sums of any such multiset stay below min X
/// and distinct multisets give distinct sums (base-m digits are the counts).
struct SumEncoder {
  unsigned long m = 2;
  long k = 0;
  std::vector<Rational> xs;
  std::vector<Rational> values;  // values[i] = f(xs[i])

  /// f(x); throws std::out_of_range when x is not in X.
  const Rational& encode(const Rational& x) const;
  /// Sum of f over the multiset with counts[i] copies of xs[i].
  Rational sum(const std::vector<std::size_t>& counts) const;
  Rational min_x() const;
};

/// Throws std::invalid_argument when X is empty, has repeats, leaves (0,1),
/// or m < 2.
SumEncoder build_sum_encoder(unsigned long m, std::vector<Rational> xs);

}  // namespace wlgnn
