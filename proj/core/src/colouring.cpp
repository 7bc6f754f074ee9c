#include "wlgnn/colouring.hpp"

#include <string>
#include <unordered_map>

namespace wlgnn {

std::size_t Colouring::index(std::span<const Vertex> t) const {
  if (t.size() != arity)
    throw ColouringMismatch("tuple of length " + std::to_string(t.size()) +
                            " for a colouring of arity " + std::to_string(arity));
  std::size_t idx = 0;
  for (Vertex v : t) {
    if (v >= n) throw GraphError("tuple entry " + std::to_string(v) + " is not a vertex");
    idx = idx * n + v;
  }
  return idx;
}

std::vector<Vertex> Colouring::tuple(std::size_t index) const {
  std::vector<Vertex> t(arity);
  for (std::size_t i = arity; i-- > 0;) {
    t[i] = static_cast<Vertex>(index % n);
    index /= n;
  }
  return t;
}

std::vector<std::uint32_t> canonical_partition(std::span<const ColourId> ids) {
  std::unordered_map<ColourId, std::uint32_t> seen;
  std::vector<std::uint32_t> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, fresh] = seen.try_emplace(ids[i], static_cast<std::uint32_t>(seen.size()));
    out[i] = it->second;
  }
  return out;
}

std::size_t class_count(std::span<const ColourId> ids) {
  std::unordered_map<ColourId, char> seen;
  for (auto c : ids) seen.try_emplace(c, 0);
  return seen.size();
}

std::vector<std::vector<std::size_t>> partition_classes(std::span<const ColourId> ids) {
  const auto canon = canonical_partition(ids);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (canon[i] == classes.size()) classes.emplace_back();
    classes[canon[i]].push_back(i);
  }
  return classes;
}

bool refines(std::span<const ColourId> chi, std::span<const ColourId> chi2) {
  if (chi.size() != chi2.size())
    throw ColouringMismatch("colourings over different universes");
  std::unordered_map<ColourId, ColourId> image;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    auto [it, fresh] = image.try_emplace(chi[i], chi2[i]);
    if (!fresh && it->second != chi2[i]) return false;
  }
  return true;
}

bool equivalent(std::span<const ColourId> chi, std::span<const ColourId> chi2) {
  return refines(chi, chi2) && refines(chi2, chi);
}

namespace {
void check_compatible(const Colouring& a, const Colouring& b) {
  if (a.arity != b.arity || a.n != b.n)
    throw ColouringMismatch("colourings differ in arity or vertex count");
}
}  // namespace

bool refines(const Colouring& chi, const Colouring& chi2) {
  check_compatible(chi, chi2);
  return refines(std::span<const ColourId>(chi.ids), std::span<const ColourId>(chi2.ids));
}

bool equivalent(const Colouring& chi, const Colouring& chi2) {
  check_compatible(chi, chi2);
  return equivalent(std::span<const ColourId>(chi.ids), std::span<const ColourId>(chi2.ids));
}

ColourMultiset hat_invariant(const Colouring& chi) {
  return ColourMultiset(chi.ids.begin(), chi.ids.end());
}

}  // namespace wlgnn
