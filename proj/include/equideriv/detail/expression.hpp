#pragma once

// Recursive-descent parser for the literal grammar shared by scalars and
// polynomials:
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' ['-'] digits)?
//   atom  := digits | identifier | '(' expr ')'
//
// Identifiers are a letter followed by letters or digits ("z", "x0").
// Semantics are delegated to a Traits type providing
//   Value integer(const mpz_class&)
//   Value identifier(std::string_view name, std::size_t column)
//   Value divide(const Value&, const Value&, std::size_t column)
//   Value power(const Value&, long exponent, std::size_t column)

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "equideriv/errors.hpp"

namespace equideriv::detail {

template <class Value, class Traits>
class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, Traits& traits)
      : text_(text), traits_(traits) {}

  Value parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Value v = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  Value expr() {
    Value v = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      skip_space();
      std::size_t col = pos_ + 1;
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        Value d = unary();
        v = traits_.divide(v, d, col);
      } else {
        return v;
      }
    }
  }

  Value unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    skip_space();
    std::size_t col = pos_ + 1;
    if (!accept('^')) return base;
    skip_space();
    bool negative = accept('-');
    skip_space();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent");
    long e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_] - '0');
      if (e > 1000000) fail("exponent too large");
      ++pos_;
    }
    return traits_.power(base, negative ? -e : e, col);
  }

  Value atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    char c = text_[pos_];
    if (accept('(')) {
      Value v = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return traits_.integer(mpz_class(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return traits_.identifier(text_.substr(start, pos_ - start), start + 1);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  std::string_view text_;
  Traits& traits_;
  std::size_t pos_ = 0;
};

}  // namespace equideriv::detail
