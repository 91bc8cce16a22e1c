#include <cctype>
#include <string>

#include "sosbound/errors.hpp"
#include "sosbound/polynomial.hpp"

namespace sosbound {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n_vars) : text_(text), n_(n_vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  Polynomial expr() {
    skip_space();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial rhs = term();
      acc = c == '+' ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (c == '/') {
        ++pos_;
        skip_space();
        const std::size_t at = pos_;
        Polynomial divisor = factor();
        if (divisor.degree() != 0) fail_at("division is only allowed by a constant", at);
        const Rational d = divisor.coefficient(MultiIndex(n_));
        if (d == 0) fail_at("division by zero", at);
        acc = Rational(1 / d) * acc;
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    skip_space();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) {
        fail_at("exponent must be a nonnegative integer literal", at);
      }
      const std::string digits = read_digits();
      if (peek() == '.') fail_at("exponent must be a nonnegative integer literal", at);
      if (digits.size() > 6) fail_at("exponent too large", at);
      b = pow(b, std::stoi(digits));
    }
    return b;
  }

  Polynomial base() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'X') {
      const std::size_t at = pos_;
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index after 'x'");
      const std::string digits = read_digits();
      const unsigned long idx = digits.size() > 9 ? 0 : std::stoul(digits);
      if (idx < 1 || idx > n_) {
        fail_at("variable x" + digits + " out of range 1.." + std::to_string(n_), at);
      }
      return Polynomial::variable(n_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t at = pos_;
      std::string literal = read_digits();
      if (peek() == '.') {
        ++pos_;
        literal += '.' + read_digits();
      }
      try {
        return Polynomial::constant(n_, parse_rational(literal));
      } catch (const InvalidArgument&) {
        fail_at("malformed number '" + literal + "'", at);
      }
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t n_vars) {
  if (n_vars == 0) throw InvalidArgument("number of variables must be positive");
  return Parser(text, n_vars).parse();
}

}  // namespace sosbound
