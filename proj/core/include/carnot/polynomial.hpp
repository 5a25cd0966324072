#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "carnot/exact_linalg.hpp"
#include "carnot/lie_algebra.hpp"
#include "carnot/rational.hpp"

namespace carnot {

/// Product of basis variables; variables are basis indices, stored sorted
/// with positive exponents.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (variable, exponent)

  Monomial() = default;
  static Monomial variable(std::size_t var, std::uint32_t exponent = 1);
  /// Factors in any order; repeated variables are merged, zero exponents dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  std::uint32_t degree() const noexcept;
  std::uint32_t exponent(std::size_t var) const noexcept;

  bool divides(const Monomial& other) const noexcept;
  /// this / other; requires other.divides(*this).
  Monomial quotient(const Monomial& other) const;
  /// Removes `var` entirely.
  Monomial without(std::size_t var) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic comparison: total degree first, then lexicographic
/// with variable 0 most significant. Negative, zero or positive.
int grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex_compare(a, b) > 0; }
};

/// Polynomial with rational coefficients in the coordinates of an algebra.
/// Terms are kept leading-first in grlex order. A polynomial without an
/// algebra handle is a constant and combines with any algebra.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(int c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Polynomial(GradedAlgebra alg, Terms terms);

  static Polynomial variable(const GradedAlgebra& alg, std::size_t index);
  static Polynomial variable(const GradedAlgebra& alg, std::string_view name);
  static Polynomial monomial(const GradedAlgebra& alg, Monomial m, Rational c = 1);
  /// The linear function <xi, .> for xi in the algebra.
  static Polynomial linear(const GradedAlgebra& alg, const LieElement& xi);

  const GradedAlgebra& algebra() const noexcept { return alg_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term.
  Rational constant() const;
  /// 0 for the zero polynomial.
  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree_in(std::size_t var) const noexcept;
  /// Sorted distinct variables.
  std::vector<std::size_t> variables() const;

  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  Polynomial& operator*=(const Polynomial& g);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  /// Structural equality of canonical forms (the algebra handle of a nonconstant
  /// operand must match).
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned k) const;
  Polynomial derivative(std::size_t var) const;

  /// Coefficients of `var`^k, k = 0..degree_in(var); entries do not contain `var`.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;

 private:
  void adopt_algebra(const GradedAlgebra& other);
  void add_term(const Monomial& m, const Rational& c);

  GradedAlgebra alg_;
  Terms terms_;
};

/// A covector p: one rational coordinate per basis element.
class Point {
 public:
  Point() = default;
  /// The zero covector.
  explicit Point(GradedAlgebra alg);
  Point(GradedAlgebra alg, std::vector<Rational> coords);

  const GradedAlgebra& algebra() const noexcept { return alg_; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }
  std::size_t size() const noexcept { return coords_.size(); }

  Rational& operator[](std::size_t i) { return coords_.at(i); }
  const Rational& operator[](std::size_t i) const { return coords_.at(i); }

  /// Sets the coordinate named by a basis name; throws InputError otherwise.
  void set(std::string_view name, const Rational& value);
  /// p(xi).
  Rational pair(const LieElement& xi) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  GradedAlgebra alg_;
  std::vector<Rational> coords_;
};

/// Value at p; throws InputError when p does not cover f's variables.
Rational evaluate(const Polynomial& f, const Point& p);

/// Simultaneous substitution of variables by polynomials.
Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& sigma);

/// Vector of partial derivatives at p, one entry per basis coordinate of p.
RationalVector gradient_at(const Polynomial& f, const Point& p);

/// Poisson bracket on S(g) extending {x, y} = [x, y].
Polynomial poisson_bracket(const GradedAlgebra& alg, const Polynomial& f, const Polynomial& g);

/// Primitive integer multiple of f with positive leading coefficient (0 stays 0).
Polynomial canonicalize(const Polynomial& f);

/// Canonical text, leading term first, e.g. "x1*x212 - x2*x112 + 1/2*x12^2".
std::string format_polynomial(const Polynomial& f);

/// Parses the text grammar
///   expr := term (('+' | '-') term)* ; term := factor ('*' factor)*
///   factor := primary ('^' integer)? ; primary := rational | name | '(' expr ')'
/// with an optional leading sign. Names are basis names or iterated-bracket
/// symbols resolved to normal form ("x312" in rank 3). Throws ParseError.
Polynomial parse_polynomial(const GradedAlgebra& alg, std::string_view text);

/// Multivariate gcd over Q, canonicalized; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// f / g when g divides f exactly; throws std::domain_error otherwise.
Polynomial exact_quotient(const Polynomial& f, const Polynomial& g);

/// Viewing f as a polynomial in the variables selected by `main` with
/// coefficients in the remaining ones, the gcd of those coefficients.
Polynomial content_over(const Polynomial& f, const std::vector<bool>& main);

}  // namespace carnot
