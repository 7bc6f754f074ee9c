#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wlgnn/formula.hpp"

namespace wlgnn {

class SexprError : public std::runtime_error {
 public:
  SexprError(std::size_t offset, const std::string& what)
      : std::runtime_error("at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Grammar (labels and relations are 1-based, ';' starts a line comment):
///   (= x y) (E x y) (R i x y) (P i x) (true x)
///   (not f) (and f ...) (or f ...)
///   (existsGE p y f) (exists y f) (forall y f)
/// `true`, `exists` and `forall` are desugared while parsing.
Formula parse_formula(std::string_view text);

/// Core syntax only; shared subformulas are printed once per occurrence.
std::string to_sexpr(const Formula& f);

}  // namespace wlgnn
