#include "wlgnn/wl.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

#include "wlgnn/atomic_type.hpp"

namespace wlgnn {
namespace {

// Key prefixes keep colour trees of different algorithms apart.
constexpr std::uint64_t kTagCr = 1;
constexpr std::uint64_t kTagWl = 2;
constexpr std::uint64_t kTagOwl = 3;

std::uint64_t tag_of(Algorithm a) {
  switch (a) {
    case Algorithm::ColourRefinement: return kTagCr;
    case Algorithm::WL: return kTagWl;
    case Algorithm::OWL: return kTagOwl;
  }
  return 0;
}

std::atomic<std::uint64_t> next_batch{1};

std::size_t checked_power(std::size_t n, std::size_t k, std::size_t budget) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && r > budget / n)
      throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) +
                           " tuples exceed the budget of " + std::to_string(budget));
    r *= n;
  }
  if (r > budget)
    throw BudgetExceeded(std::to_string(r) + " tuples exceed the budget of " +
                         std::to_string(budget));
  return r;
}

void pack_bits(const std::vector<std::uint8_t>& bits, std::vector<std::uint64_t>& out) {
  const std::size_t base = out.size();
  out.resize(base + (bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[base + i / 64] |= std::uint64_t{1} << (i % 64);
}

// Bits of atp_{k+1}(v, w) that depend on w. Together with atp_k(v), which is
// already part of every colour of v, they determine atp_{k+1}(v, w).
struct Extension {
  static std::size_t width(const Graph& g, std::size_t k) { return 2 * k + g.label_count(); }
  static std::size_t width(const BinaryStructure& s, std::size_t k) {
    return s.relation_count() * (2 * k + 1) + k + s.label_count();
  }

  static void bits(const Graph& g, std::span<const Vertex> t, Vertex w, std::uint8_t* out) {
    for (Vertex v : t) {
      *out++ = v == w;
      *out++ = g.adjacent(v, w);
    }
    for (std::size_t l = 0; l < g.label_count(); ++l) *out++ = g.has_label(w, l);
  }
  static void bits(const BinaryStructure& s, std::span<const Vertex> t, Vertex w,
                   std::uint8_t* out) {
    for (std::size_t r = 0; r < s.relation_count(); ++r) {
      for (Vertex v : t) {
        *out++ = s.related(r, v, w);
        *out++ = s.related(r, w, v);
      }
      *out++ = s.related(r, w, w);
    }
    for (Vertex v : t) *out++ = v == w;
    for (std::size_t l = 0; l < s.label_count(); ++l) *out++ = s.has_label(w, l);
  }
};

// Appends a sorted run-length encoding (value, multiplicity) of vals.
void append_multiset(std::vector<ColourId>& vals, std::vector<std::uint64_t>& key) {
  std::sort(vals.begin(), vals.end());
  std::size_t distinct_pos = key.size();
  key.push_back(0);
  std::uint64_t distinct = 0;
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    key.push_back(vals[i]);
    key.push_back(j - i);
    ++distinct;
    i = j;
  }
  key[distinct_pos] = distinct;
}

template <class S>
void cr_neighbourhoods(const S& s, Vertex v, const std::vector<ColourId>& prev,
                       std::vector<ColourId>& scratch, std::vector<std::uint64_t>& key) {
  if constexpr (std::is_same_v<S, Graph>) {
    scratch.clear();
    for (Vertex w : s.neighbours(v)) scratch.push_back(prev[w]);
    append_multiset(scratch, key);
  } else {
    for (std::size_t r = 0; r < s.relation_count(); ++r) {
      scratch.clear();
      for (Vertex w : s.out_neighbours(r, v)) scratch.push_back(prev[w]);
      append_multiset(scratch, key);
      scratch.clear();
      for (Vertex w : s.in_neighbours(r, v)) scratch.push_back(prev[w]);
      append_multiset(scratch, key);
    }
  }
}

template <class S>
class Refiner {
 public:
  Refiner(Algorithm a, std::size_t k, const S& s, std::size_t budget, ColourInterner& interner)
      : alg_(a), k_(a == Algorithm::ColourRefinement ? 1 : k), s_(s), interner_(interner) {
    if (k_ == 0) throw std::invalid_argument("k must be at least 1");
    n_ = s.order();
    tuples_ = checked_power(n_, k_, budget);
    stride_.assign(k_, 1);
    for (std::size_t i = k_ - 1; i-- > 0;) stride_[i] = stride_[i + 1] * n_;
    ext_width_ = Extension::width(s, k_);
  }

  std::vector<ColourId> initial() const {
    std::vector<ColourId> ids(tuples_);
    std::vector<Vertex> t(k_);
    std::vector<std::uint64_t> key;
    for (std::size_t idx = 0; idx < tuples_; ++idx) {
      decode(idx, t);
      key.assign({0, tag_of(alg_), k_});
      const AtomicType a = atomic_type(s_, t);
      key.push_back(a.size());
      pack_bits(a.bits, key);
      ids[idx] = interner_.intern(key);
    }
    return ids;
  }

  std::vector<ColourId> step(const std::vector<ColourId>& prev, std::size_t round) const {
    std::vector<ColourId> ids(tuples_);
    std::vector<std::uint64_t> key;
    std::vector<ColourId> scratch;
    std::vector<Vertex> t(k_);
    std::vector<std::uint8_t> ext(ext_width_);
    const std::size_t ext_words = (ext_width_ + 63) / 64;
    const std::size_t elem_len = ext_words + k_;
    std::vector<std::uint64_t> elems;
    std::vector<std::size_t> order;
    for (std::size_t idx = 0; idx < tuples_; ++idx) {
      key.assign({round, tag_of(alg_), prev[idx]});
      switch (alg_) {
        case Algorithm::ColourRefinement:
          cr_neighbourhoods(s_, static_cast<Vertex>(idx), prev, scratch, key);
          break;
        case Algorithm::OWL:
          decode(idx, t);
          for (std::size_t i = 0; i < k_; ++i) {
            scratch.clear();
            const std::size_t base = idx - t[i] * stride_[i];
            for (std::size_t w = 0; w < n_; ++w) scratch.push_back(prev[base + w * stride_[i]]);
            append_multiset(scratch, key);
          }
          break;
        case Algorithm::WL: {
          decode(idx, t);
          elems.assign(n_ * elem_len, 0);
          for (std::size_t w = 0; w < n_; ++w) {
            std::uint64_t* row = elems.data() + w * elem_len;
            Extension::bits(s_, t, static_cast<Vertex>(w), ext.data());
            for (std::size_t b = 0; b < ext_width_; ++b)
              if (ext[b]) row[b / 64] |= std::uint64_t{1} << (b % 64);
            for (std::size_t i = 0; i < k_; ++i)
              row[ext_words + i] = prev[idx - t[i] * stride_[i] + w * stride_[i]];
          }
          order.resize(n_);
          std::iota(order.begin(), order.end(), std::size_t{0});
          auto row_less = [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(
                elems.begin() + a * elem_len, elems.begin() + (a + 1) * elem_len,
                elems.begin() + b * elem_len, elems.begin() + (b + 1) * elem_len);
          };
          auto row_eq = [&](std::size_t a, std::size_t b) {
            return std::equal(elems.begin() + a * elem_len, elems.begin() + (a + 1) * elem_len,
                              elems.begin() + b * elem_len);
          };
          std::sort(order.begin(), order.end(), row_less);
          key.push_back(elem_len);
          for (std::size_t i = 0; i < n_;) {
            std::size_t j = i;
            while (j < n_ && row_eq(order[i], order[j])) ++j;
            key.insert(key.end(), elems.begin() + order[i] * elem_len,
                       elems.begin() + (order[i] + 1) * elem_len);
            key.push_back(j - i);
            i = j;
          }
          break;
        }
      }
      ids[idx] = interner_.intern(key);
    }
    return ids;
  }

  std::size_t tuples() const { return tuples_; }
  std::size_t arity() const { return k_; }
  std::size_t order() const { return n_; }

 private:
  void decode(std::size_t idx, std::vector<Vertex>& t) const {
    for (std::size_t i = k_; i-- > 0;) {
      t[i] = static_cast<Vertex>(idx % n_);
      idx /= n_;
    }
  }

  Algorithm alg_;
  std::size_t k_;
  const S& s_;
  ColourInterner& interner_;
  std::size_t n_ = 0;
  std::size_t tuples_ = 0;
  std::size_t ext_width_ = 0;
  std::vector<std::size_t> stride_;
};

std::size_t union_class_count(const std::vector<std::vector<ColourId>>& cur) {
  std::unordered_set<ColourId> seen;
  for (const auto& ids : cur) seen.insert(ids.begin(), ids.end());
  return seen.size();
}

template <class S>
std::vector<WlRun> run_joint_impl(Algorithm a, std::size_t k, std::span<const S* const> items,
                                  const WlOptions& opt) {
  ColourInterner& interner = opt.interner ? *opt.interner : ColourInterner::global();
  std::vector<Refiner<S>> refiners;
  refiners.reserve(items.size());
  for (const S* s : items) refiners.emplace_back(a, k, *s, opt.tuple_budget, interner);

  const std::uint64_t batch = next_batch.fetch_add(1);
  std::vector<WlRun> runs(items.size());
  std::vector<std::vector<ColourId>> cur(items.size());
  std::vector<std::vector<std::size_t>> counts(items.size());
  for (std::size_t g = 0; g < items.size(); ++g) {
    runs[g].algorithm = a;
    runs[g].k = refiners[g].arity();
    runs[g].interner = &interner;
    runs[g].batch = batch;
    cur[g] = refiners[g].initial();
    counts[g].push_back(class_count(cur[g]));
  }
  auto store = [&](std::size_t round) {
    for (std::size_t g = 0; g < items.size(); ++g)
      runs[g].rounds.push_back(
          Colouring{refiners[g].arity(), refiners[g].order(), round, cur[g]});
  };
  store(0);
  std::size_t joint = union_class_count(cur);
  bool joint_stable = false;
  for (std::size_t t = 1;; ++t) {
    if (opt.max_rounds && t > *opt.max_rounds) break;
    std::vector<std::vector<ColourId>> next(items.size());
    for (std::size_t g = 0; g < items.size(); ++g) {
      next[g] = refiners[g].step(cur[g], t);
      counts[g].push_back(class_count(next[g]));
    }
    const std::size_t joint_next = union_class_count(next);
    // Refinement is monotone, so equal class counts mean equal partitions.
    if (joint_next == joint && opt.stop_when_stable) {
      joint_stable = true;
      break;
    }
    if (joint_next == joint) joint_stable = true;
    cur = std::move(next);
    joint = joint_next;
    store(t);
  }
  for (std::size_t g = 0; g < items.size(); ++g) {
    auto& run = runs[g];
    run.joint_stable = joint_stable;
    const auto& c = counts[g];
    for (std::size_t t = 0; t + 1 < c.size(); ++t)
      if (c[t] == c[t + 1]) {
        run.stable_round = t;
        run.stability_verified = true;
        break;
      }
  }
  return runs;
}

template <class S>
WlRun single(Algorithm a, std::size_t k, const S& s, const WlOptions& opt) {
  const S* p = &s;
  return std::move(run_joint_impl<S>(a, k, std::span<const S* const>(&p, 1), opt).front());
}

}  // namespace

std::string algorithm_name(Algorithm a, std::size_t k) {
  switch (a) {
    case Algorithm::ColourRefinement: return "cr";
    case Algorithm::WL: return "wl" + std::to_string(k);
    case Algorithm::OWL: return "owl" + std::to_string(k);
  }
  return "?";
}

std::size_t default_tuple_budget() {
  if (const char* env = std::getenv("WLGNN_BUDGET_TUPLES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

const Colouring& WlRun::at(std::size_t t) const {
  if (t < rounds.size()) return rounds[t];
  throw std::out_of_range("round " + std::to_string(t) + " was not computed (last is " +
                          std::to_string(last_round()) + ")");
}

std::vector<WlRun> run_joint(Algorithm a, std::size_t k, std::span<const Graph* const> graphs,
                             const WlOptions& opt) {
  return run_joint_impl<Graph>(a, k, graphs, opt);
}
std::vector<WlRun> run_joint(Algorithm a, std::size_t k,
                             std::span<const BinaryStructure* const> structures,
                             const WlOptions& opt) {
  return run_joint_impl<BinaryStructure>(a, k, structures, opt);
}

WlRun colour_refinement(const Graph& g, const WlOptions& opt) {
  return single(Algorithm::ColourRefinement, 1, g, opt);
}
WlRun colour_refinement(const BinaryStructure& s, const WlOptions& opt) {
  return single(Algorithm::ColourRefinement, 1, s, opt);
}
WlRun wl(const Graph& g, std::size_t k, const WlOptions& opt) {
  return single(Algorithm::WL, k, g, opt);
}
WlRun wl(const BinaryStructure& s, std::size_t k, const WlOptions& opt) {
  return single(Algorithm::WL, k, s, opt);
}
WlRun owl(const Graph& g, std::size_t k, const WlOptions& opt) {
  return single(Algorithm::OWL, k, g, opt);
}
WlRun owl(const BinaryStructure& s, std::size_t k, const WlOptions& opt) {
  return single(Algorithm::OWL, k, s, opt);
}

namespace {

// Round to read in each run, clamping past the end only when both runs come
// from one jointly stabilised batch.
std::size_t comparable_round(const WlRun& a, const WlRun& b, std::size_t t) {
  if (a.algorithm != b.algorithm || a.k != b.k)
    throw std::invalid_argument("runs use different algorithms");
  if (a.interner != b.interner)
    throw std::invalid_argument("runs use different colour interners");
  if (t <= a.last_round() && t <= b.last_round()) return t;
  if (a.batch == b.batch && a.joint_stable) return std::min(a.last_round(), b.last_round());
  throw std::invalid_argument("round " + std::to_string(t) +
                              " is not available in both runs; use run_joint");
}

}  // namespace

bool distinguishes_vertices(const WlRun& a, std::span<const Vertex> tuple, const WlRun& b,
                            std::span<const Vertex> tuple2, std::size_t t) {
  const std::size_t r = comparable_round(a, b, t);
  return a.rounds[r].at(tuple) != b.rounds[r].at(tuple2);
}

bool distinguishes_graphs(const WlRun& a, const WlRun& b, std::size_t t) {
  const std::size_t r = comparable_round(a, b, t);
  return !(hat_invariant(a.rounds[r]) == hat_invariant(b.rounds[r]));
}

bool distinguishes_graphs(Algorithm a, std::size_t k, const Graph& g, const Graph& h,
                          std::optional<std::size_t> t, ColourInterner* interner) {
  WlOptions opt;
  opt.interner = interner;
  opt.max_rounds = t;
  const Graph* pair[2] = {&g, &h};
  auto runs = run_joint(a, k, std::span<const Graph* const>(pair, 2), opt);
  return distinguishes_graphs(runs[0], runs[1], runs[0].last_round());
}

}  // namespace wlgnn
