#include "wlgnn/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace wlgnn {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected a non-negative integer for ") + what +
                               ", got '" + std::string(tok) + "'");
  return value;
}

std::size_t parse_index(std::string_view tok, std::size_t line, std::size_t bound,
                        const char* what) {
  const std::size_t v = parse_count(tok, line, what);
  if (v < 1 || v > bound)
    throw ParseError(line, std::string(what) + " " + std::string(tok) +
                               " outside 1.." + std::to_string(bound));
  return v - 1;
}

}  // namespace

Graph read_graph(std::string_view text) {
  std::optional<std::size_t> n, labels;
  std::vector<Edge> edges;
  std::vector<LabelEntry> entries;
  std::set<Edge> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "p") {
      if (n) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "graph")
        throw ParseError(line_no, "header must read 'p graph <n> <l>'");
      n = parse_count(tok[2], line_no, "vertex count");
      labels = parse_count(tok[3], line_no, "label count");
    } else if (tok[0] == "e") {
      if (!n) throw ParseError(line_no, "edge before header");
      if (tok.size() != 3) throw ParseError(line_no, "edge line must read 'e <u> <v>'");
      const auto u = parse_index(tok[1], line_no, *n, "vertex");
      const auto v = parse_index(tok[2], line_no, *n, "vertex");
      if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u + 1));
      const Edge key{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
      if (!seen.insert(key).second)
        throw ParseError(line_no, "duplicate edge " + std::to_string(u + 1) + " " +
                                      std::to_string(v + 1));
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else if (tok[0] == "l") {
      if (!n) throw ParseError(line_no, "label before header");
      if (tok.size() != 3) throw ParseError(line_no, "label line must read 'l <v> <i>'");
      const auto v = parse_index(tok[1], line_no, *n, "vertex");
      const auto i = parse_index(tok[2], line_no, *labels, "label");
      entries.push_back({static_cast<Vertex>(v), i});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!n) throw ParseError(0, "missing 'p graph' header");
  try {
    return Graph(*n, *labels, std::move(edges), entries);
  } catch (const GraphError& e) {
    throw ParseError(0, e.what());
  }
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_graph(buf.str());
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  out << "p graph " << g.order() << ' ' << g.label_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (const auto& l : g.label_entries()) out << "l " << l.vertex + 1 << ' ' << l.label + 1 << '\n';
  return out.str();
}

void write_graph_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_graph(g);
}

}  // namespace wlgnn
