#include "wlgnn/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace wlgnn {
namespace {

struct Sexp {
  std::size_t offset = 0;
  std::string atom;  // empty for lists
  std::vector<Sexp> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Sexp read_top() {
    Sexp e = read();
    skip();
    if (pos_ != s_.size()) throw SexprError(pos_, "trailing input after formula");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip();
    if (pos_ >= s_.size()) throw SexprError(pos_, "unexpected end of input");
    Sexp e;
    e.offset = pos_;
    if (s_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw SexprError(e.offset, "unbalanced '('");
        if (s_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.list.push_back(read());
      }
    }
    if (s_[pos_] == ')') throw SexprError(pos_, "unexpected ')'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != ';')
      ++pos_;
    e.atom = std::string(s_.substr(start, pos_ - start));
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string var_of(const Sexp& e) {
  if (e.is_list) throw SexprError(e.offset, "expected a variable name");
  for (char c : e.atom)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      throw SexprError(e.offset, "invalid variable name '" + e.atom + "'");
  if (std::isdigit(static_cast<unsigned char>(e.atom[0])))
    throw SexprError(e.offset, "variable names cannot start with a digit");
  return e.atom;
}

std::size_t number_of(const Sexp& e, std::size_t min) {
  if (e.is_list) throw SexprError(e.offset, "expected a number");
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), v);
  if (ec != std::errc{} || ptr != e.atom.data() + e.atom.size())
    throw SexprError(e.offset, "expected a number, got '" + e.atom + "'");
  if (v < min) throw SexprError(e.offset, "number must be at least " + std::to_string(min));
  return v;
}

void arity(const Sexp& e, std::size_t n) {
  if (e.list.size() != n + 1)
    throw SexprError(e.offset, "'" + e.list[0].atom + "' takes " + std::to_string(n) +
                                   " argument(s)");
}

Formula build(const Sexp& e) {
  if (!e.is_list) throw SexprError(e.offset, "expected '(' to start a formula");
  if (e.list.empty() || e.list[0].is_list) throw SexprError(e.offset, "expected an operator");
  const std::string& op = e.list[0].atom;
  const auto& a = e.list;
  if (op == "=") {
    arity(e, 2);
    return var_eq(var_of(a[1]), var_of(a[2]));
  }
  if (op == "E") {
    arity(e, 2);
    return edge(var_of(a[1]), var_of(a[2]));
  }
  if (op == "R") {
    arity(e, 3);
    return rel(number_of(a[1], 1) - 1, var_of(a[2]), var_of(a[3]));
  }
  if (op == "P") {
    arity(e, 2);
    return label(number_of(a[1], 1) - 1, var_of(a[2]));
  }
  if (op == "true") {
    arity(e, 1);
    return top(var_of(a[1]));
  }
  if (op == "not") {
    arity(e, 1);
    return negate(build(a[1]));
  }
  if (op == "and" || op == "or") {
    if (a.size() < 2) throw SexprError(e.offset, "'" + op + "' needs at least one operand");
    std::vector<Formula> fs;
    for (std::size_t i = 1; i < a.size(); ++i) fs.push_back(build(a[i]));
    return op == "and" ? conj(std::move(fs)) : disj(std::move(fs));
  }
  if (op == "existsGE") {
    arity(e, 3);
    return exists_ge(number_of(a[1], 1), var_of(a[2]), build(a[3]));
  }
  if (op == "exists") {
    arity(e, 2);
    return exists(var_of(a[1]), build(a[2]));
  }
  if (op == "forall") {
    arity(e, 2);
    return forall(var_of(a[1]), build(a[2]));
  }
  throw SexprError(e.offset, "unknown operator '" + op + "'");
}

void print(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FormulaKind::VarEq: out += "(= " + f->a + " " + f->b + ")"; return;
    case FormulaKind::Edge: out += "(E " + f->a + " " + f->b + ")"; return;
    case FormulaKind::Rel:
      out += "(R " + std::to_string(f->index + 1) + " " + f->a + " " + f->b + ")";
      return;
    case FormulaKind::Label: out += "(P " + std::to_string(f->index + 1) + " " + f->a + ")"; return;
    case FormulaKind::Not: out += "(not "; break;
    case FormulaKind::And: out += "(and"; break;
    case FormulaKind::Or: out += "(or"; break;
    case FormulaKind::Exists:
      out += "(existsGE " + std::to_string(f->index) + " " + f->a + " ";
      break;
  }
  for (std::size_t i = 0; i < f->children.size(); ++i) {
    if (f->kind == FormulaKind::And || f->kind == FormulaKind::Or || i > 0) out += ' ';
    print(f->children[i], out);
  }
  out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Reader r(text);
  return build(r.read_top());
}

std::string to_sexpr(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace wlgnn
