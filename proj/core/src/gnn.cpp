#include "wlgnn/gnn.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "wlgnn/derived_structure.hpp"
#include "wlgnn/generators.hpp"
#include "wlgnn/random_graphs.hpp"

namespace wlgnn {
namespace {

template <class F>
void parallel_for(std::size_t n, bool allow, F&& body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = allow ? std::min<std::size_t>(hw, n / 256) : 0;
  if (workers < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i) body(i);
    });
}

std::vector<double> sum_sorted(std::vector<const std::vector<double>*> rows, std::size_t dim) {
  std::sort(rows.begin(), rows.end(), [](const auto* a, const auto* b) { return *a < *b; });
  std::vector<double> s(dim, 0.0);
  for (const auto* r : rows)
    for (std::size_t i = 0; i < dim; ++i) s[i] += (*r)[i];
  return s;
}

void require_dim(const FeatureMap& z, std::size_t dim, const char* where) {
  if (z.dim != dim)
    throw ModelError(std::string(where) + ": feature dimension " + std::to_string(z.dim) +
                     " but layer expects " + std::to_string(dim));
}

// Neighbour lists per relation; a graph is a single relation.
struct Adjacency {
  const Graph* g = nullptr;
  const BinaryStructure* s = nullptr;

  std::size_t order() const { return g ? g->order() : s->order(); }
  std::size_t relations() const { return g ? 1 : s->relation_count(); }
  std::span<const Vertex> nbrs(std::size_t r, Vertex v) const {
    return g ? g->neighbours(v) : s->out_neighbours(r, v);
  }
};

RationalVector mat_vec(const Matrix& m, const RationalVector& x) {
  RationalVector y(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      if (sgn(m(r, c)) != 0 && sgn(x[c]) != 0) y[r] += m(r, c) * x[c];
  return y;
}

std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
  std::vector<double> y(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) y[r] += m(r, c).get_d() * x[c];
  return y;
}

FeatureMap apply_layer_impl(const GnnLayer& layer, const Adjacency& adj, const FeatureMap& z) {
  require_dim(z, layer.in_dim, "apply_layer");
  const std::size_t n = adj.order();
  if (z.size() != n) throw ModelError("apply_layer: feature map does not cover the vertex set");
  if (!layer.messages.empty() && layer.messages.size() != adj.relations())
    throw ModelError("apply_layer: " + std::to_string(layer.messages.size()) +
                     " message matrices for " + std::to_string(adj.relations()) + " relations");
  const std::size_t p = layer.in_dim;
  const bool parallel = !layer.comb.stateful();
  FeatureMap out;
  out.mode = z.mode;
  out.dim = layer.out_dim;
  out.round = z.round + 1;

  if (z.mode == NumericMode::Rational) {
    RationalVector global;
    if (layer.global_readout) {
      global.assign(p, 0);
      for (const auto& row : z.exact)
        for (std::size_t i = 0; i < p; ++i) global[i] += row[i];
    }
    out.exact.resize(n);
    parallel_for(n, parallel, [&](std::size_t v) {
      RationalVector in = z.exact[v];
      if (layer.messages.empty()) {
        RationalVector s(p, 0);
        for (std::size_t r = 0; r < adj.relations(); ++r)
          for (Vertex w : adj.nbrs(r, static_cast<Vertex>(v)))
            for (std::size_t i = 0; i < p; ++i) s[i] += z.exact[w][i];
        in.insert(in.end(), s.begin(), s.end());
      } else {
        RationalVector msg(layer.messages.front().rows, 0);
        for (std::size_t r = 0; r < adj.relations(); ++r) {
          RationalVector s(p, 0);
          for (Vertex w : adj.nbrs(r, static_cast<Vertex>(v)))
            for (std::size_t i = 0; i < p; ++i) s[i] += z.exact[w][i];
          const auto part = mat_vec(layer.messages[r], s);
          for (std::size_t i = 0; i < msg.size(); ++i) msg[i] += part[i];
        }
        in.insert(in.end(), msg.begin(), msg.end());
      }
      if (layer.global_readout) in.insert(in.end(), global.begin(), global.end());
      out.exact[v] = layer.comb.apply(in);
    });
    return out;
  }

  std::vector<double> global;
  if (layer.global_readout) {
    std::vector<const std::vector<double>*> all;
    for (const auto& row : z.approx) all.push_back(&row);
    global = sum_sorted(std::move(all), p);
  }
  out.approx.resize(n);
  parallel_for(n, parallel, [&](std::size_t v) {
    std::vector<double> in = z.approx[v];
    if (layer.messages.empty()) {
      std::vector<const std::vector<double>*> rows;
      for (std::size_t r = 0; r < adj.relations(); ++r)
        for (Vertex w : adj.nbrs(r, static_cast<Vertex>(v))) rows.push_back(&z.approx[w]);
      const auto s = sum_sorted(std::move(rows), p);
      in.insert(in.end(), s.begin(), s.end());
    } else {
      std::vector<double> msg(layer.messages.front().rows, 0.0);
      for (std::size_t r = 0; r < adj.relations(); ++r) {
        std::vector<const std::vector<double>*> rows;
        for (Vertex w : adj.nbrs(r, static_cast<Vertex>(v))) rows.push_back(&z.approx[w]);
        const auto part = mat_vec(layer.messages[r], sum_sorted(std::move(rows), p));
        for (std::size_t i = 0; i < msg.size(); ++i) msg[i] += part[i];
      }
      in.insert(in.end(), msg.begin(), msg.end());
    }
    if (layer.global_readout) in.insert(in.end(), global.begin(), global.end());
    out.approx[v] = layer.comb.apply(in);
  });
  return out;
}

FeatureMap apply_comb(const Comb& c, const FeatureMap& z) {
  if (c.in_dim() != z.dim)
    throw ModelError("comb expects dimension " + std::to_string(c.in_dim()) + ", features have " +
                     std::to_string(z.dim));
  FeatureMap out;
  out.mode = z.mode;
  out.dim = c.out_dim();
  out.round = z.round;
  if (z.mode == NumericMode::Rational) {
    out.exact.resize(z.exact.size());
    parallel_for(z.exact.size(), !c.stateful(), [&](std::size_t v) { out.exact[v] = c.apply(z.exact[v]); });
  } else {
    out.approx.resize(z.approx.size());
    parallel_for(z.approx.size(), !c.stateful(), [&](std::size_t v) { out.approx[v] = c.apply(z.approx[v]); });
  }
  return out;
}

std::vector<std::vector<std::uint8_t>> label_rows_of(const BinaryStructure& s) {
  std::vector<std::vector<std::uint8_t>> rows(s.label_count(), std::vector<std::uint8_t>(s.order()));
  for (std::size_t l = 0; l < s.label_count(); ++l)
    for (Vertex v = 0; v < s.order(); ++v) rows[l][v] = s.has_label(v, l) ? 1 : 0;
  return rows;
}

std::vector<std::vector<std::uint8_t>> label_rows_of(const Graph& g) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t l = 0; l < g.label_count(); ++l) rows.push_back(g.label_row(l));
  return rows;
}

RunResult run_impl(const GnnModel& model, const Adjacency& adj,
                   const std::vector<std::vector<std::uint8_t>>& label_rows, const RunOptions& opt) {
  model.validate();
  const std::size_t n = adj.order();
  RniDraws local;
  const RniDraws* draws = opt.draws;
  if (model.rni_padding > 0 && draws == nullptr) {
    if (!opt.seed) throw ModelError("model uses random initialisation but no seed was given");
    local = rni_draws(n, model.rni_padding, *opt.seed);
    draws = &local;
  }
  if (draws && model.rni_padding == 0) draws = nullptr;
  if (draws && (draws->size() != n || (n > 0 && draws->front().size() != model.rni_padding)))
    throw ModelError("random draw table does not match the graph and rniPadding");

  FeatureMap z = initial_features(n, label_rows, model.input_dim, model.mode, draws);
  if (model.input_encoder) z = apply_comb(*model.input_encoder, z);

  RunResult res;
  if (opt.keep_trace) res.trace.push_back(z);
  std::size_t steps = model.depth(n);
  if (model.recurrent && opt.max_rounds) steps = std::min(steps, *opt.max_rounds);
  for (std::size_t t = 0; t < steps; ++t) {
    const GnnLayer& layer = model.recurrent ? model.layers.front() : model.layers[t];
    z = apply_layer_impl(layer, adj, z);
    if (opt.keep_trace) res.trace.push_back(z);
  }
  res.vertex_output = model.readout ? apply_comb(*model.readout, z) : z;
  if (model.aggregate_readout) {
    if (z.mode == NumericMode::Rational) {
      RationalVector s(z.dim, 0);
      for (const auto& row : z.exact)
        for (std::size_t i = 0; i < z.dim; ++i) s[i] += row[i];
      res.graph_output_exact = model.aggregate_readout->apply(s);
    } else {
      std::vector<const std::vector<double>*> rows;
      for (const auto& row : z.approx) rows.push_back(&row);
      res.graph_output_approx = model.aggregate_readout->apply(sum_sorted(std::move(rows), z.dim));
    }
  }
  res.final_features = std::move(z);
  return res;
}

}  // namespace

std::size_t GnnLayer::comb_in_dim() const {
  const std::size_t msg = messages.empty() ? in_dim : messages.front().rows;
  return in_dim + msg + (global_readout ? in_dim : 0);
}

void GnnModel::validate() const {
  if (recurrent && layers.size() != 1) throw ModelError("a recurrent model has exactly one layer");
  std::size_t dim = input_dim;
  if (input_encoder) {
    input_encoder->validate();
    if (input_encoder->in_dim() != input_dim) throw ModelError("input encoder does not take inputDim values");
    dim = input_encoder->out_dim();
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const std::string where = "layer " + std::to_string(i) + ": ";
    l.comb.validate();
    if (l.in_dim != dim)
      throw ModelError(where + "input dimension " + std::to_string(l.in_dim) + ", previous output " +
                       std::to_string(dim));
    for (const auto& m : l.messages)
      if (m.cols != l.in_dim || m.rows != l.messages.front().rows || m.data.size() != m.rows * m.cols)
        throw ModelError(where + "message matrix has the wrong shape");
    if (l.comb.in_dim() != l.comb_in_dim())
      throw ModelError(where + "comb takes " + std::to_string(l.comb.in_dim()) + " values, expected " +
                       std::to_string(l.comb_in_dim()));
    if (l.comb.out_dim() != l.out_dim) throw ModelError(where + "comb output differs from outDim");
    if (recurrent && l.in_dim != l.out_dim)
      throw ModelError(where + "a recurrent layer needs equal input and output dimension");
    dim = l.out_dim;
  }
  if (readout) {
    readout->validate();
    if (readout->in_dim() != dim) throw ModelError("readout does not match the final dimension");
  }
  if (aggregate_readout) {
    aggregate_readout->validate();
    if (aggregate_readout->in_dim() != dim) throw ModelError("aggregate readout does not match the final dimension");
  }
}

std::size_t GnnModel::depth(std::size_t n) const {
  return recurrent ? iter.rounds(n) : layers.size();
}

std::size_t GnnModel::feature_dim() const {
  if (!layers.empty()) return layers.back().out_dim;
  return input_encoder ? input_encoder->out_dim() : input_dim;
}

bool GnnModel::is_fnn() const {
  auto ok = [](const std::optional<Comb>& c) { return !c || c->is_fnn(); };
  if (!ok(input_encoder) || !ok(readout) || !ok(aggregate_readout)) return false;
  for (const auto& l : layers)
    if (!l.comb.is_fnn()) return false;
  return true;
}

std::vector<double> FeatureMap::row_as_double(std::size_t v) const {
  if (mode == NumericMode::Float64) return approx[v];
  std::vector<double> r;
  for (const auto& q : exact[v]) r.push_back(q.get_d());
  return r;
}

bool operator==(const FeatureMap& a, const FeatureMap& b) {
  return a.mode == b.mode && a.dim == b.dim && a.exact == b.exact && a.approx == b.approx;
}

RniDraws rni_draws(std::size_t n, std::size_t coords, std::uint64_t seed) {
  Rng rng(seed);
  RniDraws d(n, std::vector<std::uint64_t>(coords));
  for (auto& row : d)
    for (auto& x : row) x = rng();
  return d;
}

RniDraws permute_draws(const RniDraws& d, std::span<const Vertex> perm) {
  if (perm.size() != d.size()) throw ModelError("permutation and draw table differ in size");
  RniDraws out(d.size());
  for (std::size_t v = 0; v < d.size(); ++v) out[perm[v]] = d[v];
  return out;
}

FeatureMap initial_features(std::size_t n, const std::vector<std::vector<std::uint8_t>>& label_rows,
                            std::size_t dim, NumericMode mode, const RniDraws* rni) {
  const std::size_t l = label_rows.size();
  const std::size_t pad = rni && n > 0 ? rni->front().size() : 0;
  if (dim < l + pad)
    throw ModelError("input dimension " + std::to_string(dim) + " is smaller than " +
                     std::to_string(l) + " label bits plus " + std::to_string(pad) + " random coordinates");
  if (rni && rni->size() != n) throw ModelError("random draw table does not cover the vertex set");
  FeatureMap z;
  z.mode = mode;
  z.dim = dim;
  const Rational scale = pow2(-64);
  if (mode == NumericMode::Rational) {
    z.exact.assign(n, RationalVector(dim, 0));
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < l; ++i) z.exact[v][i] = label_rows[i][v];
      for (std::size_t j = 0; j < pad; ++j) {
        const std::uint64_t u = (*rni)[v][j];
        mpz_class num;
        mpz_import(num.get_mpz_t(), 1, 1, sizeof u, 0, 0, &u);
        z.exact[v][dim - pad + j] = Rational(num) * scale;
      }
    }
  } else {
    z.approx.assign(n, std::vector<double>(dim, 0.0));
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < l; ++i) z.approx[v][i] = label_rows[i][v];
      for (std::size_t j = 0; j < pad; ++j) z.approx[v][dim - pad + j] = unit_double((*rni)[v][j]);
    }
  }
  return z;
}

FeatureMap initial_features(const Graph& g, std::size_t dim, NumericMode mode, const RniDraws* rni) {
  return initial_features(g.order(), label_rows_of(g), dim, mode, rni);
}

FeatureMap apply_layer(const GnnLayer& layer, const Graph& g, const FeatureMap& z) {
  return apply_layer_impl(layer, Adjacency{&g, nullptr}, z);
}

FeatureMap apply_layer(const GnnLayer& layer, const BinaryStructure& s, const FeatureMap& z) {
  return apply_layer_impl(layer, Adjacency{nullptr, &s}, z);
}

RunResult run(const GnnModel& model, const Graph& g, const RunOptions& opt) {
  return run_impl(model, Adjacency{&g, nullptr}, label_rows_of(g), opt);
}

RunResult run(const GnnModel& model, const BinaryStructure& s, const RunOptions& opt) {
  return run_impl(model, Adjacency{nullptr, &s}, label_rows_of(s), opt);
}

RunResult run_kgnn(const GnnModel& model, const Graph& g, std::size_t k, const RunOptions& opt) {
  const BinaryStructure a = derived_structure(g, k);
  return run(model, a, opt);
}

std::vector<std::uint32_t> feature_partition(const FeatureMap& z) {
  std::vector<std::uint32_t> ids(z.size());
  if (z.mode == NumericMode::Rational) {
    std::map<RationalVector, std::uint32_t, RationalVectorLess> seen;
    for (std::size_t v = 0; v < ids.size(); ++v)
      ids[v] = seen.emplace(z.exact[v], static_cast<std::uint32_t>(seen.size())).first->second;
  } else {
    std::map<std::vector<double>, std::uint32_t> seen;
    for (std::size_t v = 0; v < ids.size(); ++v)
      ids[v] = seen.emplace(z.approx[v], static_cast<std::uint32_t>(seen.size())).first->second;
  }
  return ids;
}

GnnModel random_model(const RandomModelOptions& opt, std::uint64_t seed) {
  Rng rng(seed);
  auto weight = [&] {
    const auto span = static_cast<std::size_t>(2 * opt.range);
    const long v = static_cast<long>(uniform_index(rng, 0, span)) - opt.range;
    return Rational(v, opt.denominator);
  };
  auto random_matrix = [&](std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (auto& x : m.data) {
      x = weight();
      x.canonicalize();
    }
    return m;
  };
  auto random_vector = [&](std::size_t r) {
    RationalVector b(r);
    for (auto& x : b) {
      x = weight();
      x.canonicalize();
    }
    return b;
  };
  GnnModel m;
  m.input_dim = opt.input_dim;
  m.mode = opt.mode;
  std::size_t dim = opt.input_dim;
  for (std::size_t d = 0; d < opt.depth; ++d) {
    GnnLayer l;
    l.in_dim = dim;
    l.out_dim = opt.hidden;
    l.global_readout = opt.global_readout;
    for (std::size_t r = 0; r < opt.relations; ++r) l.messages.push_back(random_matrix(dim, dim));
    l.comb = affine_comb(random_matrix(opt.hidden, l.comb_in_dim()), random_vector(opt.hidden),
                         opt.activation);
    m.layers.push_back(std::move(l));
    dim = opt.hidden;
  }
  m.readout = affine_comb(random_matrix(1, dim), random_vector(1), Activation::Identity);
  if (opt.aggregate_readout)
    m.aggregate_readout = affine_comb(random_matrix(1, dim), random_vector(1), Activation::Identity);
  return m;
}

}  // namespace wlgnn
