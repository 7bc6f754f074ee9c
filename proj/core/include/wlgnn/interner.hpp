#pragma once

#include <cstddef>
#include <cstdint>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace wlgnn {

using ColourId = std::uint32_t;
using ColourKey = std::vector<std::uint64_t>;

/// Thread-safe bijection between serialized colour trees and dense ids.
/// Two colours are equal iff their keys are equal, so ids are comparable
/// across graphs and across runs that share an interner.
class ColourInterner {
 public:
  ColourId intern(std::span<const std::uint64_t> key);
  ColourId intern(const ColourKey& key) { return intern(std::span<const std::uint64_t>(key)); }

  /// Key of a previously issued id. The returned copy is safe to keep.
  ColourKey key(ColourId id) const;
  std::size_t size() const;

  /// Process-wide default interner.
  static ColourInterner& global();

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::span<const std::uint64_t> k) const noexcept;
    std::size_t operator()(const ColourKey& k) const noexcept {
      return (*this)(std::span<const std::uint64_t>(k));
    }
  };
  struct Eq {
    using is_transparent = void;
    bool operator()(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) const noexcept;
    bool operator()(const ColourKey& a, const ColourKey& b) const noexcept { return a == b; }
    bool operator()(const ColourKey& a, std::span<const std::uint64_t> b) const noexcept {
      return (*this)(std::span<const std::uint64_t>(a), b);
    }
    bool operator()(std::span<const std::uint64_t> a, const ColourKey& b) const noexcept {
      return (*this)(a, std::span<const std::uint64_t>(b));
    }
  };

  mutable std::shared_mutex mutex_;
  std::unordered_map<ColourKey, ColourId, Hash, Eq> table_;
  std::vector<const ColourKey*> inverse_;
};

}  // namespace wlgnn
