#include <cctype>

#include "carnot/errors.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

namespace {

constexpr unsigned kMaxExponent = 1000;

class Parser {
 public:
  Parser(const GradedAlgebra& alg, std::string_view text) : alg_(alg), text_(text) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // '+', '-' or the Unicode minus sign U+2212.
  int peek_sign() {
    skip_space();
    if (pos_ >= text_.size()) return 0;
    if (text_[pos_] == '+') return 1;
    if (text_[pos_] == '-') return -1;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") return -1;
    return 0;
  }

  void consume_sign() { pos_ += text_[pos_] == '\xE2' ? 3 : 1; }

  Polynomial zero() const { return Polynomial::monomial(alg_, Monomial(), 0); }

  Polynomial expr() {
    Polynomial acc = zero();
    int sign = peek_sign();
    if (sign != 0) consume_sign();
    else sign = 1;
    acc += sign > 0 ? term() : -term();
    while ((sign = peek_sign()) != 0) {
      consume_sign();
      acc += sign > 0 ? term() : -term();
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        acc *= factor();
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = primary();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      const std::string digits = read_digits();
      if (digits.empty()) fail("expected exponent");
      if (digits.size() > 4 || std::stoul(digits) > kMaxExponent) {
        pos_ = start;
        fail("exponent too large");
      }
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(read_digits());
      Integer den = 1;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_space();
        const std::size_t start = pos_;
        const std::string d = read_digits();
        if (d.empty()) fail("expected denominator");
        den = Integer(d);
        if (den == 0) {
          pos_ = start;
          fail("zero denominator");
        }
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::monomial(alg_, Monomial(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      auto xi = alg_.resolve_symbol(name);
      if (!xi) {
        pos_ = start;
        fail("unknown symbol '" + std::string(name) + "'");
      }
      return Polynomial::linear(alg_, *xi);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  const GradedAlgebra& alg_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const GradedAlgebra& alg, std::string_view text) { return Parser(alg, text).parse(); }

}  // namespace carnot
