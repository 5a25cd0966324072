#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "carnot/polynomial.hpp"

namespace carnot {

namespace {

using UniPoly = std::vector<Rational>;  // coefficient of v^k at index k

void trim(UniPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

std::size_t univariate_gcd_degree(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      const Rational f = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= f * b[k];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

UniPoly specialise(const Polynomial& f, std::size_t var, const std::map<std::size_t, Rational>& values) {
  UniPoly out(f.degree_in(var) + 1);
  for (const auto& [m, c] : f.terms()) {
    Rational t = c;
    for (const auto& [v, e] : m.factors())
      if (v != var) {
        Rational q;
        mpz_pow_ui(q.get_num_mpz_t(), values.at(v).get_num_mpz_t(), e);
        t *= q;
      }
    out[m.exponent(var)] += t;
  }
  return out;
}

// True when a and b provably share no nonconstant factor: for each common
// variable, a random specialisation of the others keeps both degrees and has
// a constant univariate gcd. False means "unknown".
bool coprime_by_evaluation(const Polynomial& a, const Polynomial& b) {
  const auto av = a.variables();
  const auto bv = b.variables();
  std::vector<std::size_t> all;
  std::set_union(av.begin(), av.end(), bv.begin(), bv.end(), std::back_inserter(all));
  std::mt19937_64 rng(0x9cd);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  std::map<std::size_t, Rational> values;
  for (std::size_t v : all) values[v] = Rational(dist(rng));
  for (std::size_t v : all) {
    const std::uint32_t da = a.degree_in(v);
    const std::uint32_t db = b.degree_in(v);
    if (da == 0 || db == 0) continue;
    UniPoly ua = specialise(a, v, values);
    UniPoly ub = specialise(b, v, values);
    if (sgn(ua.back()) == 0 || sgn(ub.back()) == 0) return false;
    if (univariate_gcd_degree(std::move(ua), std::move(ub)) != 0) return false;
  }
  return true;
}

Polynomial monomial_gcd(const Polynomial& f, const Monomial& m) {
  std::vector<Monomial::Factor> common;
  for (const auto& [v, e] : m.factors()) {
    std::uint32_t k = e;
    for (const auto& t : f.terms()) k = std::min(k, t.first.exponent(v));
    if (k > 0) common.emplace_back(v, k);
  }
  return Polynomial::monomial(f.algebra(), Monomial::from_factors(std::move(common)));
}

Polynomial content_in(const Polynomial& f, std::size_t var) {
  auto coeffs = f.coefficients_in(var);
  std::sort(coeffs.begin(), coeffs.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  Polynomial c = Polynomial(0);
  for (const auto& coeff : coeffs) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) return Polynomial(1);
  }
  return c;
}

Polynomial primitive_in(const Polynomial& f, std::size_t var) {
  if (f.is_zero()) return f;
  return canonicalize(exact_quotient(f, content_in(f, var)));
}

// Pseudo-remainder of a by b as polynomials in `var`, up to a nonzero scalar.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b, std::size_t var) {
  const std::uint32_t n = b.degree_in(var);
  const Polynomial lb = b.coefficients_in(var).back();
  while (!a.is_zero()) {
    const std::uint32_t k = a.degree_in(var);
    if (k < n) break;
    const Polynomial la = a.coefficients_in(var).back();
    a = lb * a - la * Polynomial::monomial(b.algebra(), Monomial::variable(var, k - n)) * b;
    a = canonicalize(a);
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return canonicalize(b);
  if (b.is_zero()) return canonicalize(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.size() == 1) return monomial_gcd(b, a.leading_monomial());
  if (b.size() == 1) return monomial_gcd(a, b.leading_monomial());
  if (coprime_by_evaluation(a, b)) return Polynomial(1);

  auto av = a.variables();
  auto bv = b.variables();
  const std::size_t var = std::min(av.front(), bv.front());
  if (a.degree_in(var) == 0) return gcd(a, content_in(b, var));
  if (b.degree_in(var) == 0) return gcd(content_in(a, var), b);

  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial c = gcd(ca, cb);
  Polynomial p = primitive_in(a, var);
  Polynomial q = primitive_in(b, var);
  if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
  while (!q.is_zero()) {
    Polynomial r = pseudo_remainder(p, q, var);
    p = std::move(q);
    q = primitive_in(r, var);
  }
  return canonicalize(c * primitive_in(p, var));
}

Polynomial exact_quotient(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  const GradedAlgebra& alg = f.algebra().valid() ? f.algebra() : g.algebra();
  Polynomial q = Polynomial::monomial(alg, Monomial(), 0);
  Polynomial r = f;
  const Monomial& lg = g.leading_monomial();
  const Rational& cg = g.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lg.divides(lr)) throw std::domain_error("polynomial division is not exact");
    const Polynomial t = Polynomial::monomial(alg, lr.quotient(lg), r.leading_coefficient() / cg);
    q += t;
    r -= t * g;
  }
  return q;
}

Polynomial content_over(const Polynomial& f, const std::vector<bool>& main) {
  std::map<Monomial, Polynomial, GrlexGreater> groups;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> outer;
    std::vector<Monomial::Factor> inner;
    for (const auto& fac : m.factors()) (fac.first < main.size() && main[fac.first] ? outer : inner).push_back(fac);
    auto& slot = groups.try_emplace(Monomial::from_factors(std::move(outer)), Polynomial::monomial(f.algebra(), Monomial(), 0)).first->second;
    slot += Polynomial::monomial(f.algebra(), Monomial::from_factors(std::move(inner)), c);
  }
  std::vector<Polynomial> coeffs;
  for (auto& g : groups) coeffs.push_back(std::move(g.second));
  std::sort(coeffs.begin(), coeffs.end(), [](const Polynomial& x, const Polynomial& y) { return x.size() < y.size(); });
  Polynomial c = Polynomial(0);
  for (const auto& coeff : coeffs) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) return Polynomial(1);
  }
  return c;
}

}  // namespace carnot
