#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wlgnn/graph.hpp"

namespace wlgnn {

/// Malformed graph text. line() is 1-based; 0 means "end of input".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Text format (vertices and labels are 1-based):
///   c <comment>
///   p graph <n> <l>
///   e <u> <v>
///   l <v> <i>
/// The header must precede all e/l lines. Blank lines are ignored.
Graph read_graph(std::string_view text);
Graph read_graph_file(const std::filesystem::path& path);

/// Header, then edges in insertion order, then labels sorted by (vertex, label).
std::string write_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::filesystem::path& path);

}  // namespace wlgnn
