#include "carnot/polynomial.hpp"

#include <algorithm>

#include "carnot/errors.hpp"

namespace carnot {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(static_cast<std::uint32_t>(var), exponent);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v)
      m.factors_.back().second += e;
    else
      m.factors_.emplace_back(v, e);
  }
  return m;
}

std::uint32_t Monomial::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

std::uint32_t Monomial::exponent(std::size_t var) const noexcept {
  for (const auto& [v, e] : factors_)
    if (v == var) return e;
  return 0;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (const auto& [v, e] : factors_)
    if (other.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial m;
  for (const auto& [v, e] : factors_) {
    const std::uint32_t d = other.exponent(v);
    if (d > e) throw std::domain_error("monomial quotient is not a monomial");
    if (e > d) m.factors_.emplace_back(v, e - d);
  }
  for (const auto& [v, e] : other.factors_)
    if (exponent(v) == 0) throw std::domain_error("monomial quotient is not a monomial");
  return m;
}

Monomial Monomial::without(std::size_t var) const {
  Monomial m;
  for (const auto& f : factors_)
    if (f.first != var) m.factors_.push_back(f);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      m.factors_.push_back(*j++);
    } else {
      m.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  for (std::size_t k = 0; k < fa.size() && k < fb.size(); ++k) {
    if (fa[k].first != fb[k].first) return fa[k].first < fb[k].first ? 1 : -1;
    if (fa[k].second != fb[k].second) return fa[k].second < fb[k].second ? -1 : 1;
  }
  if (fa.size() != fb.size()) return fa.size() < fb.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial(), c);
}

Polynomial::Polynomial(GradedAlgebra alg, Terms terms) : alg_(std::move(alg)) {
  for (auto& [m, c] : terms) add_term(m, c);
}

Polynomial Polynomial::variable(const GradedAlgebra& alg, std::size_t index) {
  if (index >= alg.dimension()) throw InputError("variable index out of range");
  return monomial(alg, Monomial::variable(index));
}

Polynomial Polynomial::variable(const GradedAlgebra& alg, std::string_view name) {
  auto idx = alg.find(name);
  if (!idx) throw InputError("unknown basis name '" + std::string(name) + "'");
  return variable(alg, *idx);
}

Polynomial Polynomial::monomial(const GradedAlgebra& alg, Monomial m, Rational c) {
  Polynomial p;
  p.alg_ = alg;
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::linear(const GradedAlgebra& alg, const LieElement& xi) {
  Polynomial p;
  p.alg_ = alg;
  for (const auto& [k, c] : xi.terms()) {
    if (k >= alg.dimension()) throw InputError("Lie element outside the algebra");
    p.add_term(Monomial::variable(k), c);
  }
  return p;
}

bool Polynomial::is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rational Polynomial::constant() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::total_degree() const noexcept { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

std::uint32_t Polynomial::degree_in(std::size_t var) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.exponent(var));
  return d;
}

std::vector<std::size_t> Polynomial::variables() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms_)
    for (const auto& f : t.first.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  return terms_.begin()->second;
}

void Polynomial::adopt_algebra(const GradedAlgebra& other) {
  if (!other.valid()) return;
  if (!alg_.valid()) {
    alg_ = other;
  } else if (!(alg_ == other)) {
    throw InputError("polynomials over different algebras");
  }
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  adopt_algebra(g.alg_);
  for (const auto& [m, c] : g.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) {
  adopt_algebra(g.alg_);
  for (const auto& [m, c] : g.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& g) { return *this = *this * g; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.adopt_algebra(a.alg_);
  out.adopt_algebra(b.alg_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_ != b.terms_) return false;
  if (a.is_constant() || !a.alg_.valid() || !b.alg_.valid()) return true;
  return a.alg_ == b.alg_;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = Polynomial(1);
  result.adopt_algebra(alg_);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out;
  out.alg_ = alg_;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.exponent(var);
    if (e == 0) continue;
    out.add_term(m.quotient(Monomial::variable(var)), c * e);
  }
  return out;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  std::vector<Polynomial> out(degree_in(var) + 1);
  for (auto& p : out) p.alg_ = alg_;
  for (const auto& [m, c] : terms_) out[m.exponent(var)].add_term(m.without(var), c);
  return out;
}

// ---------------------------------------------------------------------------
// Point

Point::Point(GradedAlgebra alg) : alg_(std::move(alg)), coords_(alg_.dimension()) {}

Point::Point(GradedAlgebra alg, std::vector<Rational> coords) : alg_(std::move(alg)), coords_(std::move(coords)) {
  if (coords_.size() != alg_.dimension()) throw InputError("point has wrong number of coordinates");
}

void Point::set(std::string_view name, const Rational& value) {
  auto idx = alg_.find(name);
  if (!idx) throw InputError("unknown coordinate '" + std::string(name) + "'");
  coords_[*idx] = value;
}

Rational Point::pair(const LieElement& xi) const {
  Rational s = 0;
  for (const auto& [k, c] : xi.terms()) {
    if (k >= coords_.size()) throw InputError("Lie element outside the point's algebra");
    s += c * coords_[k];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation, substitution, brackets

namespace {

Rational power(const Rational& q, std::uint32_t e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

void check_point(const Polynomial& f, const Point& p) {
  if (f.algebra().valid() && p.algebra().valid() && !(f.algebra() == p.algebra()))
    throw InputError("point and polynomial belong to different algebras");
}

}  // namespace

Rational evaluate(const Polynomial& f, const Point& p) {
  check_point(f, p);
  Rational sum = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m.factors()) {
      if (v >= p.size()) throw InputError("point is missing coordinate " + std::to_string(v));
      t *= power(p[v], e);
      if (sgn(t) == 0) break;
    }
    sum += t;
  }
  return sum;
}

Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& sigma) {
  if (sigma.empty()) return f;
  Polynomial out = Polynomial::monomial(f.algebra(), Monomial(), 0);
  for (const auto& [m, c] : f.terms()) {
    Polynomial kept = Polynomial::monomial(f.algebra(), Monomial(), c);
    std::vector<Monomial::Factor> untouched;
    for (const auto& [v, e] : m.factors()) {
      auto it = sigma.find(v);
      if (it == sigma.end())
        untouched.emplace_back(v, e);
      else
        kept *= it->second.pow(e);
      if (kept.is_zero()) break;
    }
    if (kept.is_zero()) continue;
    out += kept * Polynomial::monomial(f.algebra(), Monomial::from_factors(std::move(untouched)));
  }
  return out;
}

RationalVector gradient_at(const Polynomial& f, const Point& p) {
  check_point(f, p);
  RationalVector g(p.size());
  for (std::size_t v : f.variables()) {
    if (v >= p.size()) throw InputError("point is missing coordinate " + std::to_string(v));
    g[v] = evaluate(f.derivative(v), p);
  }
  return g;
}

Polynomial poisson_bracket(const GradedAlgebra& alg, const Polynomial& f, const Polynomial& g) {
  for (const Polynomial* h : {&f, &g})
    if (h->algebra().valid() && !(h->algebra() == alg)) throw InputError("polynomial over a different algebra");
  const auto fv = f.variables();
  const auto gv = g.variables();
  std::vector<Polynomial> dg;
  dg.reserve(gv.size());
  for (std::size_t b : gv) dg.push_back(g.derivative(b));

  Polynomial out = Polynomial::monomial(alg, Monomial(), 0);
  for (std::size_t a : fv) {
    Polynomial inner = Polynomial::monomial(alg, Monomial(), 0);
    for (std::size_t k = 0; k < gv.size(); ++k) {
      const LieElement& br = alg.bracket_basis(a, gv[k]);
      if (br.is_zero()) continue;
      inner += dg[k] * Polynomial::linear(alg, br);
    }
    if (!inner.is_zero()) out += f.derivative(a) * inner;
  }
  return out;
}

Polynomial canonicalize(const Polynomial& f) {
  if (f.is_zero()) return f;
  Integer l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : f.terms()) {
    Rational scaled = t.second * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_num_mpz_t());
  }
  Rational factor(l, g);
  factor.canonicalize();
  if (sgn(f.leading_coefficient()) < 0) factor = -factor;
  return factor * f;
}

std::string format_polynomial(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = sgn(c) < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    const Rational a = abs(c);
    if (m.is_one()) {
      out += to_string(a);
      continue;
    }
    if (a != 1) out += to_string(a) + "*";
    bool first_factor = true;
    for (const auto& [v, e] : m.factors()) {
      if (!first_factor) out += "*";
      first_factor = false;
      out += f.algebra().name(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace carnot
