#include "wlgnn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wlgnn {
namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

Rational rational_of(const json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw ModelError(e.what());
  }
  throw ModelError("expected a rational, got " + j.dump());
}

RationalVector vector_of(const json& j) {
  if (!j.is_array()) throw ModelError("expected an array of rationals, got " + j.dump());
  RationalVector v;
  for (const auto& x : j) v.push_back(rational_of(x));
  return v;
}

Matrix matrix_of(const json& j) {
  if (!j.is_array()) throw ModelError("expected a matrix (array of rows)");
  Matrix m;
  m.rows = j.size();
  for (const auto& row : j) {
    auto r = vector_of(row);
    if (m.data.empty() && m.cols == 0) m.cols = r.size();
    if (r.size() != m.cols) throw ModelError("ragged matrix rows");
    for (auto& x : r) m.data.push_back(std::move(x));
  }
  return m;
}

ordered emit_vector(const RationalVector& v) {
  ordered a = ordered::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ordered emit_matrix(const Matrix& m) {
  ordered a = ordered::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    ordered row = ordered::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(to_string(m(r, c)));
    a.push_back(std::move(row));
  }
  return a;
}

ordered emit_stage(const Stage& s) {
  ordered o;
  if (const auto* a = std::get_if<AffineStage>(&s)) {
    o["type"] = "affine";
    o["A"] = emit_matrix(a->A);
    o["b"] = emit_vector(a->b);
    o["activation"] = activation_name(a->activation);
  } else if (const auto* t = std::get_if<OracleStage>(&s)) {
    o["type"] = "oracle";
    o["inDim"] = t->in_dim;
    o["outDim"] = t->out_dim;
    ordered entries = ordered::array();
    for (const auto& [k, v] : t->entries) entries.push_back(ordered::array({emit_vector(k), emit_vector(v)}));
    o["entries"] = std::move(entries);
    if (t->fallback) o["default"] = emit_vector(*t->fallback);
  } else {
    const auto& b = *std::get<BuiltinStage>(s).impl;
    o["type"] = "builtin";
    o["name"] = b.name();
    ordered params = ordered::object();
    for (const auto& [k, v] : b.params()) params[k] = v;
    o["params"] = std::move(params);
    o["state"] = b.state();
  }
  return o;
}

ordered emit_comb(const Comb& c) {
  if (c.stages.size() == 1 && std::holds_alternative<AffineStage>(c.stages.front())) {
    ordered o = emit_stage(c.stages.front());
    o.erase("type");
    return o;
  }
  ordered o;
  ordered stages = ordered::array();
  for (const auto& s : c.stages) stages.push_back(emit_stage(s));
  o["stages"] = std::move(stages);
  return o;
}

AffineStage affine_of(const json& j) {
  AffineStage a;
  a.A = matrix_of(j.at("A"));
  a.b = j.contains("b") ? vector_of(j.at("b")) : RationalVector(a.A.rows, 0);
  a.activation = parse_activation(j.value("activation", std::string("identity")));
  if (a.A.rows == 0) throw ModelError("affine stage with an empty matrix");
  return a;
}

Stage stage_of(const json& j) {
  const std::string type = j.value("type", std::string("affine"));
  if (type == "affine") return affine_of(j);
  if (type == "oracle") {
    OracleStage o;
    o.in_dim = j.at("inDim").get<std::size_t>();
    o.out_dim = j.at("outDim").get<std::size_t>();
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 2) throw ModelError("oracle entry must be [input, output]");
      o.entries[vector_of(e[0])] = vector_of(e[1]);
    }
    if (j.contains("default")) o.fallback = vector_of(j.at("default"));
    return o;
  }
  if (type == "builtin") {
    std::map<std::string, std::string> params;
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items())
        params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    std::vector<std::vector<std::string>> state;
    if (j.contains("state")) state = j.at("state").get<std::vector<std::vector<std::string>>>();
    return BuiltinStage{make_builtin(j.at("name").get<std::string>(), params, state)};
  }
  throw ModelError("unknown stage type '" + type + "'");
}

Comb comb_of(const json& j) {
  Comb c;
  if (j.contains("stages")) {
    for (const auto& s : j.at("stages")) c.stages.push_back(stage_of(s));
  } else {
    c.stages.push_back(affine_of(j));
  }
  c.validate();
  return c;
}

IterPolicy policy_of(const json& j) {
  IterPolicy p;
  if (j.is_number_unsigned()) {
    p.count = j.get<std::size_t>();
  } else if (j.is_string()) {
    if (j.get<std::string>() != "graphOrder") throw ModelError("iterPolicy must be a count or \"graphOrder\"");
    p.kind = IterPolicy::Kind::GraphOrder;
  } else if (j.is_object()) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "graphOrder") p.kind = IterPolicy::Kind::GraphOrder;
    else if (kind == "constant") p.count = j.at("count").get<std::size_t>();
    else throw ModelError("unknown iterPolicy kind '" + kind + "'");
  } else {
    throw ModelError("malformed iterPolicy");
  }
  return p;
}

}  // namespace

std::string write_model(const GnnModel& m) {
  ordered o;
  o["format"] = "wlgnn-model";
  o["version"] = 1;
  o["fnn"] = m.is_fnn();
  o["numericMode"] = m.mode == NumericMode::Rational ? "rational" : "float64";
  o["inputDim"] = m.input_dim;
  o["rniPadding"] = m.rni_padding;
  if (m.input_encoder) o["inputEncoder"] = emit_comb(*m.input_encoder);
  ordered layers = ordered::array();
  for (const auto& l : m.layers) {
    ordered lj;
    lj["inDim"] = l.in_dim;
    lj["outDim"] = l.out_dim;
    lj["globalReadout"] = l.global_readout;
    ordered comb = emit_comb(l.comb);
    if (comb.contains("stages")) lj["comb"] = std::move(comb);
    else
      for (auto& [k, v] : comb.items()) lj[k] = v;
    if (!l.messages.empty()) {
      ordered msgs = ordered::array();
      for (const auto& mm : l.messages) msgs.push_back(emit_matrix(mm));
      lj["messages"] = std::move(msgs);
    }
    layers.push_back(std::move(lj));
  }
  o["layers"] = std::move(layers);
  o["recurrent"] = m.recurrent;
  if (m.iter.kind == IterPolicy::Kind::GraphOrder) o["iterPolicy"] = "graphOrder";
  else o["iterPolicy"] = m.iter.count;
  if (m.readout) o["readout"] = emit_comb(*m.readout);
  if (m.aggregate_readout) o["aggregateReadout"] = emit_comb(*m.aggregate_readout);
  return o.dump(1) + "\n";
}

GnnModel read_model(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    GnnModel m;
    m.input_dim = j.at("inputDim").get<std::size_t>();
    const auto mode = j.value("numericMode", std::string("rational"));
    if (mode == "rational") m.mode = NumericMode::Rational;
    else if (mode == "float64") m.mode = NumericMode::Float64;
    else throw ModelError("numericMode must be rational or float64");
    m.rni_padding = j.value("rniPadding", std::size_t{0});
    if (j.contains("inputEncoder")) m.input_encoder = comb_of(j.at("inputEncoder"));
    for (const auto& lj : j.at("layers")) {
      GnnLayer l;
      l.in_dim = lj.at("inDim").get<std::size_t>();
      l.out_dim = lj.at("outDim").get<std::size_t>();
      l.global_readout = lj.value("globalReadout", false);
      l.comb = comb_of(lj.contains("comb") ? lj.at("comb") : lj);
      if (lj.contains("messages"))
        for (const auto& mm : lj.at("messages")) l.messages.push_back(matrix_of(mm));
      m.layers.push_back(std::move(l));
    }
    m.recurrent = j.value("recurrent", false);
    if (j.contains("iterPolicy")) m.iter = policy_of(j.at("iterPolicy"));
    if (j.contains("readout")) m.readout = comb_of(j.at("readout"));
    if (j.contains("aggregateReadout")) m.aggregate_readout = comb_of(j.at("aggregateReadout"));
    m.validate();
    return m;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
}

void write_model_file(const GnnModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write " + path);
  out << write_model(m);
}

GnnModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return read_model(ss.str());
}

}  // namespace wlgnn
