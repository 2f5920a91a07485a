#pragma once

// Recursive-descent parser for polynomial expressions in x0..xN:
//
//   expr   := term (("+" | "-") term)*
//   term   := unary ("*" unary)*
//   unary  := "-" unary | power
//   power  := atom ("^" integer)?
//   atom   := integer | "x" digits | "(" expr ")"

#include <cctype>
#include <limits>
#include <string>
#include <string_view>

#include "focal/errors.hpp"
#include "focal/poly_program.hpp"

namespace focal {

class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                         ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, PolyProgram& prog) : text_(text), prog_(prog) {}

  NodeId parse() {
    NodeId root = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  NodeId expr() {
    std::vector<Term> terms{{1, term()}};
    for (;;) {
      skip_space();
      if (accept('+'))
        terms.push_back({1, term()});
      else if (accept('-'))
        terms.push_back({-1, term()});
      else
        break;
    }
    return terms.size() == 1 && terms[0].coeff == 1 ? terms[0].node : prog_.sum(std::move(terms));
  }

  NodeId term() {
    std::vector<NodeId> factors{unary()};
    for (;;) {
      skip_space();
      if (!accept('*')) break;
      factors.push_back(unary());
    }
    return factors.size() == 1 ? factors[0] : prog_.product(std::move(factors));
  }

  NodeId unary() {
    skip_space();
    if (accept('-')) return prog_.neg(unary());
    return power();
  }

  NodeId power() {
    NodeId base = atom();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an exponent");
    auto e = integer();
    if (e > 64) fail("exponent too large");
    return prog_.power(base, static_cast<unsigned>(e));
  }

  NodeId atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return prog_.constant(integer());
    if (ch == 'x') {
      const std::size_t start = pos_++;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a variable index after 'x'");
      auto idx = integer();
      if (static_cast<std::size_t>(idx) >= prog_.arity()) {
        auto [line, col] = location(start);
        throw Error(ErrorKind::ArityError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                               ": variable x" + std::to_string(idx) + " exceeds x" +
                                               std::to_string(prog_.arity() - 1));
      }
      return prog_.var(static_cast<std::size_t>(idx));
    }
    if (ch == '(') {
      ++pos_;
      NodeId inner = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  i64 integer() {
    i64 v = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (std::numeric_limits<i64>::max() - 9) / 10) {
        pos_ = start;
        fail("integer literal too large");
      }
      v = v * 10 + (text_[pos_++] - '0');
    }
    return v;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::pair<std::size_t, std::size_t> location(std::size_t at) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& what) const {
    auto [line, col] = location(pos_);
    throw ParseFailure(what, line, col);
  }

  std::string_view text_;
  PolyProgram& prog_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression in the variables x0..x{arity-1}.
inline PolyProgram parse_expression(std::string_view text, std::size_t arity) {
  PolyProgram prog(arity);
  detail::ExprParser parser(text, prog);
  prog.set_output(parser.parse());
  return prog;
}

}  // namespace focal
