#include "wlgnn/refinement_fast.hpp"

#include <algorithm>
#include <map>

#include "wlgnn/generators.hpp"

namespace wlgnn {
namespace {

class Partition {
 public:
  explicit Partition(const Graph& g) : g_(g), n_(g.order()) {
    elems_.resize(n_);
    pos_.resize(n_);
    cls_.resize(n_);
    count_.assign(n_, 0);
    std::map<std::vector<std::uint8_t>, std::uint32_t> initial;
    std::vector<std::uint32_t> init(n_);
    for (Vertex v = 0; v < n_; ++v)
      init[v] = initial.try_emplace(g.colour(v), static_cast<std::uint32_t>(initial.size()))
                    .first->second;
    std::vector<std::size_t> sizes(initial.size(), 0);
    for (Vertex v = 0; v < n_; ++v) ++sizes[init[v]];
    start_.resize(initial.size());
    end_.resize(initial.size());
    std::size_t acc = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      start_[c] = end_[c] = acc;
      acc += sizes[c];
    }
    for (Vertex v = 0; v < n_; ++v) {
      const auto c = init[v];
      elems_[end_[c]] = v;
      pos_[v] = end_[c]++;
      cls_[v] = c;
    }
    in_worklist_.assign(start_.size(), 1);
    for (std::uint32_t c = 0; c < start_.size(); ++c) worklist_.push_back(c);
  }

  void refine() {
    std::vector<Vertex> touched;
    while (!worklist_.empty()) {
      const std::uint32_t s = worklist_.back();
      worklist_.pop_back();
      in_worklist_[s] = 0;
      touched.clear();
      for (std::size_t i = start_[s]; i < end_[s]; ++i)
        for (Vertex w : g_.neighbours(elems_[i])) {
          if (count_[w]++ == 0) touched.push_back(w);
        }
      std::sort(touched.begin(), touched.end(), [&](Vertex a, Vertex b) {
        return cls_[a] != cls_[b] ? cls_[a] < cls_[b] : count_[a] < count_[b];
      });
      for (std::size_t i = 0; i < touched.size();) {
        std::size_t j = i;
        while (j < touched.size() && cls_[touched[j]] == cls_[touched[i]]) ++j;
        split(cls_[touched[i]], touched.data() + i, j - i);
        i = j;
      }
      for (Vertex w : touched) count_[w] = 0;
    }
  }

  StablePartition result() const {
    StablePartition p;
    p.class_of.resize(n_);
    std::vector<std::uint32_t> relabel(start_.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (Vertex v = 0; v < n_; ++v) {
      auto& r = relabel[cls_[v]];
      if (r == UINT32_MAX) r = next++;
      p.class_of[v] = r;
    }
    p.class_count = next;
    return p;
  }

 private:
  // t[0..m) are the touched members of class c, sorted by count.
  void split(std::uint32_t c, const Vertex* t, std::size_t m) {
    const std::size_t size = end_[c] - start_[c];
    if (m == size && count_[t[0]] == count_[t[m - 1]]) return;
    const std::size_t tail = end_[c] - m;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t p = tail + j;
      const Vertex displaced = elems_[p];
      const std::size_t from = pos_[t[j]];
      std::swap(elems_[p], elems_[from]);
      pos_[displaced] = from;
      pos_[t[j]] = p;
    }
    // Groups: the untouched prefix (if any), then runs of equal count.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    if (tail > start_[c]) groups.emplace_back(start_[c], tail);
    for (std::size_t j = 0; j < m;) {
      std::size_t k = j;
      while (k < m && count_[t[k]] == count_[t[j]]) ++k;
      groups.emplace_back(tail + j, tail + k);
      j = k;
    }
    std::size_t largest = 0;
    for (std::size_t gi = 1; gi < groups.size(); ++gi)
      if (groups[gi].second - groups[gi].first >
          groups[largest].second - groups[largest].first)
        largest = gi;
    const bool was_queued = in_worklist_[c] != 0;
    start_[c] = groups[0].first;
    end_[c] = groups[0].second;
    if (!was_queued && largest != 0) enqueue(c);
    for (std::size_t gi = 1; gi < groups.size(); ++gi) {
      const auto id = static_cast<std::uint32_t>(start_.size());
      start_.push_back(groups[gi].first);
      end_.push_back(groups[gi].second);
      in_worklist_.push_back(0);
      for (std::size_t p = groups[gi].first; p < groups[gi].second; ++p) cls_[elems_[p]] = id;
      if (was_queued || gi != largest) enqueue(id);
    }
  }

  void enqueue(std::uint32_t c) {
    in_worklist_[c] = 1;
    worklist_.push_back(c);
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> elems_;
  std::vector<std::size_t> pos_;
  std::vector<std::uint32_t> cls_;
  std::vector<std::uint32_t> count_;
  std::vector<std::size_t> start_, end_;
  std::vector<std::uint8_t> in_worklist_;
  std::vector<std::uint32_t> worklist_;
};

}  // namespace

StablePartition colour_refinement_fast(const Graph& g) {
  Partition p(g);
  p.refine();
  return p.result();
}

bool fast_cr_distinguishes(const Graph& g, const Graph& h) {
  if (g.order() != h.order()) return true;
  const auto p = colour_refinement_fast(disjoint_union(g, h));
  std::vector<long> balance(p.class_count, 0);
  for (std::size_t v = 0; v < g.order(); ++v) ++balance[p.class_of[v]];
  for (std::size_t v = g.order(); v < p.class_of.size(); ++v) --balance[p.class_of[v]];
  return std::any_of(balance.begin(), balance.end(), [](long b) { return b != 0; });
}

}  // namespace wlgnn
