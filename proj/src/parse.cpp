#include "lieheat/parse.hpp"

#include "lieheat/errors.hpp"

#include <cctype>
#include <string>

namespace lieheat {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_space();
    if (!at_end()) {
      if (starts_operand()) throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
    }
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool starts_operand() const {
    const char c = peek();
    return c == '(' || c == '_' || std::isalnum(static_cast<unsigned char>(c));
  }

  Expr expr() {
    Expr acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        Expr divisor = unary();
        if (divisor.is_zero()) throw ParseError("division by zero", at);
        if (!divisor.is_unit())
          throw ParseError("division only by a nonzero constant or invertible constant", at);
        acc *= divisor.unit_inverse();
      } else {
        if (starts_operand()) throw ParseError("implicit multiplication is not allowed", pos_);
        return acc;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    skip_space();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    skip_space();
    if (peek() == '-') throw ParseError("negative exponent", pos_);
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("exponent must be a nonnegative integer literal", pos_);
    const auto digits = integer_literal();
    if (peek() == '.' || peek() == '/')
      throw ParseError("non-integer exponent", pos_);
    if (digits.size() > 4) throw ParseError("exponent too large", at);
    return lieheat::pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  std::string integer_literal() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr primary() {
    skip_space();
    const std::size_t start = pos_;
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto digits = integer_literal();
      if (peek() == '.') throw ParseError("decimal literals are not supported", pos_);
      return Expr(Rational(BigInt(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        ++pos_;
      const auto ident = text_.substr(start, pos_ - start);
      const auto s = symbol_from_name(ident);
      if (!s)
        throw UnknownSymbol("unknown identifier '" + std::string(ident) + "' at position " +
                            std::to_string(start));
      return sym(*s);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace lieheat
