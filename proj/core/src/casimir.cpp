#include "carnot/casimir.hpp"

#include <algorithm>

#include "carnot/errors.hpp"
#include "carnot/orbit.hpp"
#include "carnot/poisson.hpp"

namespace carnot {

CasimirCheck is_casimir(const GradedAlgebra& alg, const Polynomial& f) {
  for (int i = 1; i <= alg.rank(); ++i) {
    Polynomial b = poisson_bracket(alg, Polynomial::variable(alg, alg.generator(i)), f);
    if (!b.is_zero()) return {false, i, std::move(b)};
  }
  return {};
}

std::vector<Polynomial> linear_casimirs(const GradedAlgebra& alg) {
  std::vector<Polynomial> out;
  const auto [t0, t1] = alg.degree_range(alg.step());
  for (std::size_t k = t0; k < t1; ++k) out.push_back(Polynomial::variable(alg, k));
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> windows(std::size_t d, std::size_t size, WindowMode mode) {
  std::vector<std::vector<std::size_t>> out;
  if (mode == WindowMode::consecutive) {
    for (std::size_t i = 0; i + size <= d; ++i) {
      std::vector<std::size_t> w(size);
      for (std::size_t k = 0; k < size; ++k) w[k] = i + k;
      out.push_back(std::move(w));
    }
    return out;
  }
  std::vector<bool> pick(d, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
  do {
    std::vector<std::size_t> w;
    for (std::size_t k = 0; k < d; ++k)
      if (pick[k]) w.push_back(k);
    out.push_back(std::move(w));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

std::vector<std::pair<std::vector<std::size_t>, Polynomial>> minors_with_windows(const GradedAlgebra& alg, WindowMode mode) {
  const int s = alg.step();
  const std::size_t r = static_cast<std::size_t>(alg.rank());
  const std::size_t d = alg.degree_size(s - 1);
  if (d < r)
    throw PreconditionError("minor Casimirs require dim g_{s-1} >= dim g_1 (dim g_" + std::to_string(s - 1) + " = " +
                            std::to_string(d) + " < " + std::to_string(r) + ")");
  const PolyMatrix b = block(alg, 1, s - 1);
  const std::size_t o = alg.degree_range(s - 1).first;
  std::vector<std::pair<std::vector<std::size_t>, Polynomial>> out;
  if (d == r) return out;
  for (auto& w : windows(d, r + 1, mode)) {
    PolyMatrix m(alg, r + 1, r + 1);
    for (std::size_t j = 0; j <= r; ++j) {
      m(0, j) = Polynomial::variable(alg, o + w[j]);
      for (std::size_t i = 0; i < r; ++i) m(i + 1, j) = b(i, w[j]);
    }
    out.emplace_back(std::move(w), determinant(m));
  }
  return out;
}

std::string window_text(const GradedAlgebra& alg, int degree, const std::vector<std::size_t>& w) {
  const std::size_t o = alg.degree_range(degree).first;
  std::string s = "bordered minor of B^{1," + std::to_string(degree) + "} over";
  for (std::size_t k : w) s += " " + alg.name(o + k);
  return s;
}

Polynomial step4_function(const GradedAlgebra& alg, const PolyVector& gamma) {
  const std::size_t r = static_cast<std::size_t>(alg.rank());
  const std::size_t o2 = alg.degree_range(2).first;
  const auto [o3, e3] = alg.degree_range(3);
  const Polynomial zero = Polynomial::monomial(alg, Monomial(), 0);

  std::vector<PolyVector> y(r, PolyVector(e3 - o3, zero));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      if (gamma[k].is_zero()) continue;
      for (const auto& [m, c] : alg.bracket_basis(i, o2 + k).terms()) y[i][m - o3] += c * gamma[k];
    }
  PolyVector b(r, zero);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t m = 0; m < y[i].size(); ++m)
      if (!y[i][m].is_zero()) b[i] += y[i][m] * Polynomial::variable(alg, o3 + m);
  PolyMatrix d(alg, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t m = 0; m < y[j].size(); ++m)
        if (!y[j][m].is_zero()) d(i, j) += y[j][m] * Polynomial::linear(alg, alg.bracket_basis(i, o3 + m));
  if (!d.is_symmetric()) throw std::logic_error("D is not symmetric for a kernel vector of B_p on g_2");
  const Polynomial det = determinant(d);
  if (det.is_zero()) throw PreconditionError("D is singular on the generic stratum");
  const PolyVector c = adjugate(d) * b;

  Polynomial f = zero;
  for (std::size_t k = 0; k < gamma.size(); ++k) f += det * gamma[k] * Polynomial::variable(alg, o2 + k);
  for (std::size_t j = 0; j < r; ++j) f -= Rational(1, 2) * c[j] * b[j];
  std::vector<bool> main(alg.dimension(), false);
  for (std::size_t k = 0; k < alg.dimension(); ++k) main[k] = alg.degree_of(k) < alg.step();
  const Polynomial content = content_over(f, main);
  if (!content.is_zero() && !content.is_constant()) f = exact_quotient(f, content);
  return canonicalize(f);
}

}  // namespace

std::vector<Polynomial> minor_casimirs(const GradedAlgebra& alg, WindowMode mode) {
  std::vector<Polynomial> out;
  for (auto& [w, f] : minors_with_windows(alg, mode)) out.push_back(canonicalize(f));
  return out;
}

std::vector<Polynomial> quadratic_casimirs_step4(const GradedAlgebra& alg) {
  if (alg.step() != 4) throw UnsupportedError("quadratic Casimirs on levels are defined for step 4");
  const PolyMatrix c = block(alg, 2, 2);
  std::mt19937_64 rng(0x5eedc0ffee);
  const Point sample = Stratum(alg).sample(rng);
  std::vector<Polynomial> out;
  for (const auto& gamma : generic_right_kernel(c, sample).vectors) out.push_back(step4_function(alg, gamma));
  return out;
}

std::vector<CasimirFunction> CasimirSet::all() const {
  std::vector<CasimirFunction> out = linear;
  out.insert(out.end(), minor.begin(), minor.end());
  out.insert(out.end(), quadratic_on_levels.begin(), quadratic_on_levels.end());
  return out;
}

CasimirSet complete_system(const GradedAlgebra& alg) {
  const int s = alg.step();
  if (s != 3 && s != 4) throw UnsupportedError("complete systems are implemented for steps 3 and 4");
  CasimirSet set;
  for (auto& f : linear_casimirs(alg))
    set.linear.push_back({"linear", "degree-" + std::to_string(s) + " coordinate", std::move(f)});

  if (s == 3 && alg.rank() == 2) {
    const OrbitAnalysis a = stepwise_reduce(Stratum(alg, "unconstrained"));
    for (auto& f : orbit_functions(a)) set.quadratic_on_levels.push_back({"quadratic", "orbit function on the unconstrained stratum", std::move(f)});
    return set;
  }
  for (auto& [w, f] : minors_with_windows(alg, WindowMode::consecutive))
    set.minor.push_back({"minor", window_text(alg, s - 1, w), canonicalize(f)});
  if (s == 4) {
    const PolyMatrix c = block(alg, 2, 2);
    std::mt19937_64 rng(0x5eedc0ffee);
    for (const auto& gamma : generic_right_kernel(c, Stratum(alg).sample(rng)).vectors) {
      std::string prov = "gamma =";
      const std::size_t o2 = alg.degree_range(2).first;
      for (std::size_t k = 0; k < gamma.size(); ++k)
        if (!gamma[k].is_zero()) prov += " (" + format_polynomial(gamma[k]) + ")*" + alg.name(o2 + k);
      set.quadratic_on_levels.push_back({"quadratic", prov, step4_function(alg, gamma)});
    }
  }
  return set;
}

}  // namespace carnot
