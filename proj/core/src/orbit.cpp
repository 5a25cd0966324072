#include "carnot/orbit.hpp"

#include <algorithm>

#include "carnot/errors.hpp"

namespace carnot {

namespace {

constexpr std::uint64_t kSampleSeed = 0x5eedc0ffee;

Polynomial zero_of(const GradedAlgebra& alg) { return Polynomial::monomial(alg, Monomial(), 0); }
Polynomial one_of(const GradedAlgebra& alg) { return Polynomial::monomial(alg, Monomial(), 1); }

Rational linear_coefficient(const Polynomial& f, std::size_t var) {
  auto it = f.terms().find(Monomial::variable(var));
  return it == f.terms().end() ? Rational(0) : it->second;
}

LieElement resolve(const GradedAlgebra& alg, std::string_view name) {
  auto e = alg.resolve_symbol(name);
  if (!e) throw InputError("unknown symbol '" + std::string(name) + "'");
  return *e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stratum

Stratum::Stratum(GradedAlgebra alg, std::string description) : alg_(std::move(alg)), description_(std::move(description)) {
  if (!alg_.valid()) throw InputError("stratum needs an algebra");
}

Stratum Stratum::at_point(const Point& p) {
  const GradedAlgebra& alg = p.algebra();
  Stratum s(alg, "level set of the top-degree coordinates at a point");
  const auto [t0, t1] = alg.degree_range(alg.step());
  for (std::size_t k = t0; k < t1; ++k) s.constrain(LieElement::basis(k), p[k]);
  s.set_witness(p);
  return s;
}

void Stratum::constrain(const LieElement& form, const Rational& value) {
  for (const auto& [k, c] : form.terms())
    if (k >= alg_.dimension() || alg_.degree_of(k) != alg_.step())
      throw InputError("stratum conditions may only involve degree-" + std::to_string(alg_.step()) + " coordinates");
  const Polynomial condition = reduce(Polynomial::linear(alg_, form) - Polynomial(value));
  if (condition.is_zero()) return;
  if (condition.is_constant()) throw StratumError("inconsistent stratum conditions");
  const std::size_t var = condition.variables().front();
  const Rational c = linear_coefficient(condition, var);
  Polynomial rhs = condition - Polynomial::monomial(alg_, Monomial::variable(var), c);
  rhs *= Rational(-1) / c;
  const std::map<std::size_t, Polynomial> rule{{var, rhs}};
  for (auto& [v, e] : sigma_) e = substitute(e, rule);
  sigma_.emplace(var, std::move(rhs));
  pointwise_ = sigma_.size() == alg_.degree_size(alg_.step());
  if (witness_ && !contains(*witness_)) throw StratumError("witness point violates the stratum conditions");
}

void Stratum::set_zero(std::string_view name) { constrain(resolve(alg_, name), 0); }

void Stratum::identify(std::string_view a, std::string_view b) { constrain(resolve(alg_, a) - resolve(alg_, b), 0); }

void Stratum::set_witness(const Point& p) {
  if (!(p.algebra() == alg_)) throw InputError("witness point belongs to another algebra");
  if (!contains(p)) throw StratumError("witness point violates the stratum conditions");
  witness_ = p;
}

std::vector<std::string> Stratum::conditions() const {
  std::vector<std::string> out;
  for (const auto& [v, e] : sigma_) out.push_back(alg_.name(v) + " = " + format_polynomial(e));
  return out;
}

Polynomial Stratum::reduce(const Polynomial& f) const { return substitute(f, sigma_); }

PolyMatrix Stratum::reduce(const PolyMatrix& m) const {
  PolyMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = reduce(m(i, j));
  return out;
}

PolyVector Stratum::reduce(const PolyVector& v) const {
  PolyVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(reduce(e));
  return out;
}

bool Stratum::contains(const Point& p) const {
  for (const auto& [v, e] : sigma_)
    if (p[v] != evaluate(e, p)) return false;
  return true;
}

Point Stratum::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  Point p(alg_);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = Rational(dist(rng));
  for (const auto& [v, e] : sigma_) p[v] = evaluate(e, p);
  return p;
}

// ---------------------------------------------------------------------------
// Stepwise reduction

namespace {

void swap_rows(PolyMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

PolyVector combine(const GradedAlgebra& alg, const std::vector<PolyVector>& basis, const PolyVector& coeffs, std::size_t len) {
  PolyVector out(len, zero_of(alg));
  for (std::size_t a = 0; a < basis.size(); ++a)
    if (!coeffs[a].is_zero())
      for (std::size_t i = 0; i < len; ++i) out[i] += coeffs[a] * basis[a][i];
  return out;
}

}  // namespace

OrbitAnalysis stepwise_reduce(const Stratum& stratum) {
  const GradedAlgebra& alg = stratum.algebra();
  if (alg.step() != 3) throw UnsupportedError("stepwise reduction is implemented for step 3 only");
  const std::size_t r = static_cast<std::size_t>(alg.rank());

  OrbitAnalysis a;
  a.stratum = stratum;
  a.b12 = stratum.reduce(block(alg, 1, 2));
  PolyMatrix m = a.b12;
  PolyMatrix t(alg, r, r);
  for (std::size_t i = 0; i < r; ++i) t(i, i) = one_of(alg);
  a.row_order.resize(r);
  for (std::size_t i = 0; i < r; ++i) a.row_order[i] = i;

  const auto& witness = stratum.witness();
  std::size_t rho = 0;
  for (std::size_t c = 0; c < m.cols() && rho < r; ++c) {
    std::optional<std::size_t> best;
    for (std::size_t k = rho; k < r; ++k) {
      const Polynomial& e = m(k, c);
      if (e.is_zero()) continue;
      if (witness && sgn(evaluate(e, *witness)) == 0) continue;
      if (!best || e.size() < m(*best, c).size()) best = k;
    }
    if (!best) continue;
    swap_rows(m, rho, *best);
    swap_rows(t, rho, *best);
    std::swap(a.row_order[rho], a.row_order[*best]);
    const Polynomial pivot = m(rho, c);
    for (std::size_t j = rho + 1; j < r; ++j) {
      const Polynomial f = m(j, c);
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < m.cols(); ++k) m(j, k) = stratum.reduce(pivot * m(j, k) - f * m(rho, k));
      for (std::size_t k = 0; k < r; ++k) t(j, k) = stratum.reduce(pivot * t(j, k) - f * t(rho, k));
    }
    a.pivot_columns.push_back(c);
    ++rho;
  }
  for (std::size_t j = rho; j < r; ++j)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!m(j, k).is_zero())
        throw StratumError("stepwise reduction refused: every remaining multiplier vanishes at the witness point");

  a.rank = rho;
  a.reduced_b12 = m;
  a.transform = t;
  for (std::size_t j = rho; j < r; ++j) a.h1_basis.push_back(t.row(j));

  // C = B^{11} restricted to h1.
  const std::size_t k1 = a.h1_basis.size();
  const PolyMatrix b11 = block(alg, 1, 1);
  a.c_matrix = PolyMatrix(alg, k1, k1);
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t j = 0; j < k1; ++j) {
      Polynomial s = zero_of(alg);
      for (std::size_t u = 0; u < r; ++u) {
        if (a.h1_basis[i][u].is_zero()) continue;
        for (std::size_t v = 0; v < r; ++v)
          if (!a.h1_basis[j][v].is_zero() && !b11(u, v).is_zero()) s += a.h1_basis[i][u] * a.h1_basis[j][v] * b11(u, v);
      }
      a.c_matrix(i, j) = stratum.reduce(s);
    }

  if (k1 == 0) return a;
  std::vector<PolyVector> kernel;
  if (stratum.pointwise()) {
    for (const auto& v : right_kernel(evaluate_matrix(a.c_matrix, *witness))) {
      PolyVector pv;
      for (const auto& q : v) pv.push_back(Polynomial::monomial(alg, Monomial(), q));
      kernel.push_back(std::move(pv));
    }
  } else {
    std::mt19937_64 rng(kSampleSeed);
    kernel = generic_right_kernel(a.c_matrix, stratum.sample(rng)).vectors;
  }
  for (const auto& v : kernel) a.kernel_k.push_back(remove_content(stratum.reduce(combine(alg, a.h1_basis, v, r))));
  return a;
}

std::vector<Polynomial> kernel_casimirs_on_stratum(const OrbitAnalysis& a) {
  const GradedAlgebra& alg = a.stratum.algebra();
  const std::size_t o2 = alg.degree_range(2).first;
  std::vector<bool> is_pivot(a.b12.cols(), false);
  for (std::size_t c : a.pivot_columns) is_pivot[c] = true;
  const std::vector<std::size_t> rows(a.row_order.begin(), a.row_order.begin() + static_cast<std::ptrdiff_t>(a.rank));

  std::vector<Polynomial> out;
  for (std::size_t c = 0; c < a.b12.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<std::size_t> cols = a.pivot_columns;
    cols.push_back(c);
    std::sort(cols.begin(), cols.end());
    PolyMatrix m(alg, a.rank + 1, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(0, j) = Polynomial::variable(alg, o2 + cols[j]);
      for (std::size_t i = 0; i < rows.size(); ++i) m(i + 1, j) = a.b12(rows[i], cols[j]);
    }
    Polynomial f = canonicalize(a.stratum.reduce(determinant(m)));
    if (!f.is_zero()) out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit functions

namespace {

Polynomial dot(const GradedAlgebra& alg, const PolyVector& u, const PolyVector& v) {
  Polynomial s = zero_of(alg);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u[i].is_zero() && !v[i].is_zero()) s += u[i] * v[i];
  return s;
}

PolyVector scaled(const PolyVector& v, const Polynomial& c) {
  PolyVector out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e * c);
  return out;
}

Polynomial finish(const Stratum& stratum, const Polynomial& f) {
  const GradedAlgebra& alg = stratum.algebra();
  Polynomial g = stratum.reduce(f);
  if (g.is_zero()) return g;
  std::vector<bool> main(alg.dimension(), false);
  for (std::size_t k = 0; k < alg.dimension(); ++k) main[k] = alg.degree_of(k) < alg.step();
  const Polynomial content = content_over(g, main);
  if (!content.is_zero() && !content.is_constant()) g = exact_quotient(g, content);
  return canonicalize(g);
}

}  // namespace

std::vector<GammaConstruction> orbit_constructions(const OrbitAnalysis& a) {
  const Stratum& st = a.stratum;
  const GradedAlgebra& alg = st.algebra();
  const std::size_t r = static_cast<std::size_t>(alg.rank());
  const auto [o2, e2] = alg.degree_range(2);
  const std::size_t n2 = e2 - o2;
  const std::size_t rho = a.rank;
  std::vector<std::size_t> zeta(a.row_order.begin(), a.row_order.begin() + static_cast<std::ptrdiff_t>(rho));

  std::mt19937_64 rng(kSampleSeed + 1);
  const Point sample = st.pointwise() ? *st.witness() : st.sample(rng);

  PolyVector x2;
  for (std::size_t m = 0; m < n2; ++m) x2.push_back(Polynomial::variable(alg, o2 + m));

  std::vector<GammaConstruction> out;
  for (const auto& gamma : a.kernel_k) {
    GammaConstruction g;
    g.gamma = gamma;
    for (std::size_t i = 0; i < rho; ++i) {
      PolyVector y(n2, zero_of(alg));
      for (std::size_t u = 0; u < r; ++u) {
        if (gamma[u].is_zero()) continue;
        for (const auto& [k, c] : alg.bracket_basis(zeta[i], u).terms()) y[k - o2] += c * gamma[u];
      }
      g.y.push_back(st.reduce(y));
      g.b.push_back(dot(alg, g.y.back(), x2));
    }
    g.d_matrix = PolyMatrix(alg, rho, rho);
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j) {
        Polynomial s = zero_of(alg);
        for (std::size_t m = 0; m < n2; ++m)
          if (!g.y[j][m].is_zero()) s += g.y[j][m] * a.b12(zeta[i], m);
        g.d_matrix(i, j) = st.reduce(s);
      }

    const GenericKernel dk = generic_right_kernel(g.d_matrix, sample);
    g.d_rank = dk.rank;
    g.d_pivots = dk.pivot_rows;
    for (const auto& v : dk.vectors) g.ker_d.push_back(st.reduce(v));

    Polynomial f = zero_of(alg);
    PolyVector x1;
    for (std::size_t u = 0; u < r; ++u) x1.push_back(Polynomial::variable(alg, u));
    if (g.d_rank == rho) {
      const Polynomial det = st.reduce(determinant(g.d_matrix));
      g.eta1 = st.reduce(adjugate(g.d_matrix) * g.b);
      g.gamma_bar = st.reduce(scaled(gamma, det));
      f = dot(alg, g.gamma_bar, x1) - Rational(1, 2) * dot(alg, g.eta1, g.b);
    } else {
      const auto& piv = g.d_pivots;
      const PolyMatrix di = g.d_matrix.submatrix(piv, piv);
      const Polynomial det_i = st.reduce(determinant(di));
      PolyVector b_i;
      for (std::size_t k : piv) b_i.push_back(g.b[k]);
      const PolyVector w = st.reduce(adjugate(di) * b_i);
      std::vector<std::size_t> all_rows(rho);
      for (std::size_t i = 0; i < rho; ++i) all_rows[i] = i;
      const PolyVector dw = g.d_matrix.submatrix(all_rows, piv) * w;
      PolyVector b2(rho, zero_of(alg));
      for (std::size_t i = 0; i < rho; ++i) b2[i] = st.reduce(det_i * g.b[i] - dw[i]);

      const PolyMatrix bzp = a.b12.submatrix(zeta, a.pivot_columns);
      const Polynomial det_b = st.reduce(determinant(bzp));
      g.eta1 = st.reduce(scaled(w, det_b));
      g.eta2 = st.reduce(adjugate(bzp) * b2);
      g.gamma_bar = st.reduce(scaled(gamma, det_i * det_b));
      PolyVector xp;
      for (std::size_t c : a.pivot_columns) xp.push_back(x2[c]);
      f = dot(alg, g.gamma_bar, x1) - Rational(1, 2) * dot(alg, g.eta1, b_i) - dot(alg, g.eta2, xp);
    }
    g.function = finish(st, f);
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Polynomial> orbit_functions(const OrbitAnalysis& a) {
  std::vector<Polynomial> out;
  for (auto& g : orbit_constructions(a))
    if (!g.function.is_zero()) out.push_back(std::move(g.function));
  return out;
}

PolyVector brackets_with_generators(const Stratum& stratum, const Polynomial& f) {
  const GradedAlgebra& alg = stratum.algebra();
  PolyVector out;
  for (int i = 1; i <= alg.rank(); ++i)
    out.push_back(stratum.reduce(poisson_bracket(alg, Polynomial::variable(alg, alg.generator(i)), f)));
  return out;
}

ConstancyCheck verify_constancy(const OrbitAnalysis& a, ConstancySubspace which) {
  const Stratum& st = a.stratum;
  const GradedAlgebra& alg = st.algebra();
  const std::size_t r = static_cast<std::size_t>(alg.rank());
  std::vector<Polynomial> elements;
  if (which == ConstancySubspace::h2) {
    for (std::size_t i = 0; i < a.h1_basis.size(); ++i)
      for (std::size_t j = i + 1; j < a.h1_basis.size(); ++j) {
        Polynomial v = zero_of(alg);
        for (std::size_t u = 0; u < r; ++u)
          for (std::size_t w = 0; w < r; ++w) {
            const Polynomial c = a.h1_basis[i][u] * a.h1_basis[j][w];
            if (!c.is_zero()) v += c * Polynomial::linear(alg, alg.bracket_basis(u, w));
          }
        elements.push_back(st.reduce(v));
      }
  } else {
    for (const auto& g : orbit_constructions(a))
      for (const auto& u : g.ker_d) elements.push_back(st.reduce(dot(alg, u, g.b)));
  }
  ConstancyCheck check;
  for (const auto& v : elements) {
    const PolyVector br = brackets_with_generators(st, v);
    for (std::size_t i = 0; i < br.size(); ++i)
      if (!br[i].is_zero()) {
        check.holds = false;
        check.witnesses.push_back("{x" + std::to_string(i + 1) + ", " + format_polynomial(v) + "} = " + format_polynomial(br[i]));
      }
  }
  return check;
}

// ---------------------------------------------------------------------------
// Classification at a point

namespace {

std::string label_for(const GradedAlgebra& alg, const OrbitReport& rep) {
  if (rep.orbit_dim == 0) return "point";
  if (alg.rank() == 3) {
    if (rep.rank_b12 == 2 && !rep.quadrics.empty()) {
      const QuadricData& q = rep.quadrics.front();
      if (q.rank == 2) return q.inertia.positive == 1 ? "R^2 x hyperbolic paraboloid" : "R^2 x elliptic paraboloid";
      if (q.rank == 1) return "parabolic cylinder";
    }
    return "affine subspace";
  }
  const bool flat = std::all_of(rep.quadrics.begin(), rep.quadrics.end(), [](const QuadricData& q) { return q.rank == 0; });
  if (flat) return "affine subspace";
  if (alg.rank() == 2) return "parabolic cylinder";
  return "product-of-quadrics";
}

}  // namespace

OrbitReport classify_orbit(const Point& p) {
  const GradedAlgebra& alg = p.algebra();
  if (!alg.valid()) throw InputError("point without an algebra");
  if (alg.step() != 3) throw UnsupportedError("orbit classification is implemented for step 3 only");
  const std::size_t r = static_cast<std::size_t>(alg.rank());

  OrbitReport rep;
  const RationalMatrix b12 = evaluate_matrix(block(alg, 1, 2), p);
  const RationalMatrix b11 = evaluate_matrix(block(alg, 1, 1), p);
  rep.rank_b12 = rank(b12);
  const auto h1 = left_kernel(b12);
  rep.k1 = h1.size();
  RationalMatrix c(rep.k1, rep.k1);
  for (std::size_t i = 0; i < rep.k1; ++i)
    for (std::size_t j = 0; j < rep.k1; ++j)
      for (std::size_t u = 0; u < r; ++u)
        for (std::size_t v = 0; v < r; ++v) c(i, j) += h1[i][u] * b11(u, v) * h1[j][v];
  const auto k = right_kernel(c);
  rep.k2 = k.size();
  rep.orbit_dim = 2 * r - rep.k1 - rep.k2;
  if (rank(evaluate_matrix(bivector(alg), p)) != rep.orbit_dim)
    throw std::logic_error("orbit dimension disagrees with the rank of the bivector");

  const auto zeta = pivot_columns(b12.transposed());
  for (const auto& kv : k) {
    LieElement gamma;
    for (std::size_t i = 0; i < rep.k1; ++i)
      for (std::size_t u = 0; u < r; ++u) gamma.add(u, kv[i] * h1[i][u]);
    std::vector<LieElement> y;
    for (std::size_t z : zeta) y.push_back(alg.bracket(LieElement::basis(z), gamma));
    RationalMatrix d(zeta.size(), zeta.size());
    for (std::size_t i = 0; i < zeta.size(); ++i)
      for (std::size_t j = 0; j < zeta.size(); ++j) d(i, j) = p.pair(alg.bracket(LieElement::basis(zeta[i]), y[j]));
    QuadricData q;
    q.rank = rank(d);
    q.inertia = inertia(d);
    rep.quadrics.push_back(q);
    if (k.size() == 1 && !zeta.empty() && q.rank == zeta.size()) rep.det_d_sign = sgn(determinant(d));
  }
  rep.type_label = label_for(alg, rep);

  const Stratum st = Stratum::at_point(p);
  const OrbitAnalysis a = stepwise_reduce(st);
  const auto [t0, t1] = alg.degree_range(alg.step());
  for (std::size_t v = t0; v < t1; ++v) rep.defining_functions.push_back(Polynomial::variable(alg, v) - Polynomial(p[v]));
  for (const auto& f : kernel_casimirs_on_stratum(a)) rep.defining_functions.push_back(f - Polynomial(evaluate(f, p)));
  for (const auto& f : orbit_functions(a)) rep.defining_functions.push_back(f - Polynomial(evaluate(f, p)));
  std::vector<RationalVector> grads;
  for (const auto& f : rep.defining_functions) grads.push_back(gradient_at(f, p));
  rep.defining_rank = rank(from_rows(grads, alg.dimension()));
  return rep;
}

Stratum rank3_preset_stratum(const GradedAlgebra& alg, bool degenerate) {
  if (alg.rank() != 3 || alg.step() != 3) throw InputError("preset strata are defined for rank 3, step 3");
  Stratum s(alg, degenerate ? "x312 = x313 = x323 = 0, x123 = x223 = 0" : "x312 = x313 = x323 = 0");
  for (const char* name : {"x312", "x313", "x323"}) s.set_zero(name);
  Point w(alg);
  w.set("x112", 1);
  if (degenerate) {
    for (const char* name : {"x123", "x223"}) s.set_zero(name);
    w.set("x212", 1);
    w.set("x113", 1);
  } else {
    w.set("x123", 1);
    w.set("x213", 1);
  }
  s.set_witness(w);
  return s;
}

}  // namespace carnot
