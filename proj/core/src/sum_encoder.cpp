#include "wlgnn/sum_encoder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wlgnn {

const Rational& SumEncoder::encode(const Rational& x) const {
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] == x) return values[i];
  throw std::out_of_range("value " + to_string(x) + " is not in the encoder's domain");
}

Rational SumEncoder::sum(const std::vector<std::size_t>& counts) const {
  if (counts.size() != xs.size()) throw std::invalid_argument("count vector has the wrong length");
  Rational s = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) s += values[i] * static_cast<unsigned long>(counts[i]);
  return s;
}

Rational SumEncoder::min_x() const { return *std::min_element(xs.begin(), xs.end()); }

SumEncoder build_sum_encoder(unsigned long m, std::vector<Rational> xs) {
  if (m < 2) throw std::invalid_argument("sum encoder needs m >= 2");
  if (xs.empty()) throw std::invalid_argument("sum encoder needs a non-empty domain");
  std::set<Rational> seen;
  for (const auto& x : xs) {
    if (sgn(x) <= 0 || x >= 1) throw std::invalid_argument("domain value " + to_string(x) + " is outside (0,1)");
    if (!seen.insert(x).second) throw std::invalid_argument("domain value " + to_string(x) + " is repeated");
  }
  SumEncoder e;
  e.m = m;
  e.xs = std::move(xs);
  const Rational lo = *seen.begin();
  Rational p = 1;  // m^-k
  while (p > lo) {
    p /= m;
    ++e.k;
  }
  for (std::size_t i = 0; i < e.xs.size(); ++i) {
    p /= m;
    e.values.push_back(p);
  }
  return e;
}

}  // namespace wlgnn
