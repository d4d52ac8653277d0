#ifndef BELTRAMI_PARSE_HPP
#define BELTRAMI_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "expr.hpp"

namespace beltrami {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t offset, const std::string& msg)
      : std::invalid_argument(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

// Recursive descent; precedence ^ > unary minus > * / > + -, with ^ right-associative.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression parse_all() {
    Expression e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression parse_sum() {
    Expression lhs = parse_product();
    for (;;) {
      if (accept('+')) lhs = lhs + parse_product();
      else if (accept('-')) lhs = lhs - parse_product();
      else return lhs;
    }
  }

  Expression parse_product() {
    Expression lhs = parse_unary();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        Expression rhs = parse_unary();
        if (rhs.is_zero()) throw ParseError(at, "division by zero");
        lhs = lhs / rhs;
      } else {
        return lhs;
      }
    }
  }

  Expression parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    skip_ws();
    std::size_t at = pos_;
    if (accept('^')) {
      Expression ex = parse_unary();
      if (!ex.is_constant() || !is_integer(ex.value()) || !ex.value().get_num().fits_slong_p())
        throw ParseError(at, "exponent must be an integer constant");
      long n = ex.value().get_num().get_si();
      if (n < 0 && base.is_zero()) throw ParseError(at, "division by zero");
      return pow(base, n);
    }
    return base;
  }

  Expression parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expression(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string id(text_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        FuncKind k;
        if (id == "sin") k = FuncKind::sin;
        else if (id == "cos") k = FuncKind::cos;
        else if (id == "exp") k = FuncKind::exp;
        else if (id == "sqrt") k = FuncKind::sqrt;
        else throw ParseError(start, "unknown function '" + id + "'");
        ++pos_;
        Expression arg = parse_sum();
        if (!accept(')')) throw ParseError(pos_, "expected ')'");
        return Expression::func(k, arg);
      }
      auto s = SymbolTable::instance().lookup(id);
      if (!s || kind(*s) == SymbolKind::second_jet)
        throw ParseError(start, "unknown identifier '" + id + "'");
      return Expression(*s);
    }
    if (c == '(') {
      ++pos_;
      Expression e = parse_sum();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return e;
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expression parse(std::string_view text) { return detail::Parser(text).parse_all(); }

}  // namespace beltrami

#endif  // BELTRAMI_PARSE_HPP
