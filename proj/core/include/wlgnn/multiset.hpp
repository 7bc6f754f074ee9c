#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>

namespace wlgnn {

/// Finite multiset: element -> positive multiplicity. Iteration is ordered.
template <class T, class Compare = std::less<T>>
class Multiset {
 public:
  using const_iterator = typename std::map<T, std::size_t, Compare>::const_iterator;

  Multiset() = default;
  template <class It>
  Multiset(It first, It last) {
    for (; first != last; ++first) add(*first);
  }

  void add(const T& x, std::size_t multiplicity = 1) {
    if (multiplicity == 0) return;
    entries_[x] += multiplicity;
    order_ += multiplicity;
  }

  std::size_t count(const T& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? 0 : it->second;
  }
  bool contains(const T& x) const { return entries_.contains(x); }

  /// Sum of multiplicities.
  std::size_t order() const noexcept { return order_; }
  std::size_t distinct() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return order_ == 0; }

  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  /// Multiset union (multiplicities add).
  Multiset& operator+=(const Multiset& other) {
    for (const auto& [x, m] : other.entries_) add(x, m);
    return *this;
  }

  friend bool operator==(const Multiset& a, const Multiset& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  std::map<T, std::size_t, Compare> entries_;
  std::size_t order_ = 0;
};

}  // namespace wlgnn
