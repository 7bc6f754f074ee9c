#include "wlgnn/interner.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace wlgnn {

std::size_t ColourInterner::Hash::operator()(std::span<const std::uint64_t> k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ k.size();
  for (std::uint64_t x : k) {
    h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

bool ColourInterner::Eq::operator()(std::span<const std::uint64_t> a,
                                    std::span<const std::uint64_t> b) const noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

ColourId ColourInterner::intern(std::span<const std::uint64_t> key) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = table_.find(key); it != table_.end()) return it->second;
  if (inverse_.size() >= 0xFFFFFFFFu) throw std::length_error("colour interner exhausted");
  const auto id = static_cast<ColourId>(inverse_.size());
  auto [it, inserted] = table_.emplace(ColourKey(key.begin(), key.end()), id);
  inverse_.push_back(&it->first);  // node-based map: key addresses are stable
  return id;
}

ColourKey ColourInterner::key(ColourId id) const {
  std::shared_lock lock(mutex_);
  if (id >= inverse_.size()) throw std::out_of_range("unknown colour id");
  return *inverse_[id];
}

std::size_t ColourInterner::size() const {
  std::shared_lock lock(mutex_);
  return inverse_.size();
}

ColourInterner& ColourInterner::global() {
  static ColourInterner instance;
  return instance;
}

}  // namespace wlgnn
