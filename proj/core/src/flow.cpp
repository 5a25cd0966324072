#include "carnot/flow.hpp"

#include <algorithm>
#include <cmath>

#include "carnot/errors.hpp"
#include "carnot/orbit.hpp"
#include "carnot/poisson.hpp"

namespace carnot {

// ---------------------------------------------------------------------------
// Control set and Hamiltonian

ControlSpec::ControlSpec(RationalMatrix m) : m_(std::move(m)) {
  const std::size_t n = m_.rows();
  if (n == 0 || m_.cols() != n) throw InputError("control matrix must be square and nonempty");
  if (!m_.is_symmetric()) throw InputError("control matrix must be symmetric");
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m_(i, j);
    if (sgn(determinant(lead)) <= 0) throw InputError("control matrix must be positive definite");
  }
  inv_.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n);
    e[j] = 1;
    const auto col = solve(m_, e);
    for (std::size_t i = 0; i < n; ++i) inv_[i * n + j] = (*col)[i].get_d();
  }
}

ControlSpec ControlSpec::identity(std::size_t r) {
  RationalMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = 1;
  return ControlSpec(std::move(m));
}

namespace {

std::vector<double> apply_inverse(const ControlSpec& spec, std::span<const double> h) {
  const std::size_t n = spec.dimension();
  if (h.size() < n) throw InputError("covector shorter than the control dimension");
  std::vector<double> u(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u[i] += spec.inverse()[i * n + j] * h[j];
  return u;
}

}  // namespace

HamiltonianValue hamiltonian(const ControlSpec& spec, std::span<const double> h) {
  const auto u = apply_inverse(spec, h);
  double q = 0;
  for (std::size_t i = 0; i < u.size(); ++i) q += h[i] * u[i];
  if (q <= 0) throw PreconditionError("support function is not differentiable at h = 0");
  HamiltonianValue v;
  v.value = std::sqrt(q);
  for (double ui : u) v.gradient.push_back(ui / v.value);
  return v;
}

double energy(const ControlSpec& spec, std::span<const double> h) {
  const auto u = apply_inverse(spec, h);
  double q = 0;
  for (std::size_t i = 0; i < u.size(); ++i) q += h[i] * u[i];
  return 0.5 * q;
}

// ---------------------------------------------------------------------------
// Vertical field and integration

VerticalField::VerticalField(const GradedAlgebra& alg, const ControlSpec& spec)
    : n_(alg.dimension()), r_(static_cast<std::size_t>(alg.rank())), inv_(spec.inverse()), rows_(alg.dimension()) {
  if (spec.dimension() != r_) throw InputError("control matrix size does not match the rank");
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < r_; ++b)
      for (const auto& [k, c] : alg.bracket_basis(a, b).terms()) rows_[a].push_back({b, k, c.get_d()});
  const auto [t0, t1] = alg.degree_range(alg.step());
  for (std::size_t a = t0; a < t1; ++a)
    if (!rows_[a].empty()) throw std::logic_error("top-degree coordinate with nonzero velocity");
}

void VerticalField::operator()(std::span<const double> p, std::span<double> out) const {
  double u[16];
  std::vector<double> heap;
  double* up = u;
  if (r_ > 16) {
    heap.resize(r_);
    up = heap.data();
  }
  for (std::size_t i = 0; i < r_; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < r_; ++j) s += inv_[i * r_ + j] * p[j];
    up[i] = s;
  }
  for (std::size_t a = 0; a < n_; ++a) {
    double s = 0;
    for (const Term& t : rows_[a]) s += t.c * p[t.k] * up[t.b];
    out[a] = -s;
  }
}

std::vector<double> to_doubles(const Point& p) {
  std::vector<double> x;
  x.reserve(p.size());
  for (const auto& q : p.coords()) x.push_back(q.get_d());
  return x;
}

Trajectory integrate_vertical(const GradedAlgebra& alg, const ControlSpec& spec, const std::vector<double>& p0, double T, double dt) {
  if (alg.step() != 3 && alg.step() != 4) throw UnsupportedError("vertical flow is implemented for steps 3 and 4");
  if (!(dt > 0) || !(T >= 0)) throw InputError("need dt > 0 and T >= 0");
  if (p0.size() != alg.dimension()) throw InputError("initial point has wrong dimension");
  const VerticalField field(alg, spec);
  const std::size_t n = p0.size();
  const auto steps = static_cast<std::size_t>(std::llround(T / dt));

  Trajectory tr;
  tr.step_size = dt;
  tr.first_layer = static_cast<std::size_t>(alg.rank());
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.times.push_back(0.0);
  tr.states.push_back(p0);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::vector<double>& x = tr.states.back();
    field(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    field(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    field(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    field(tmp, k4);
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (!std::isfinite(next[i])) throw IntegrationError("non-finite state after step " + std::to_string(s + 1), s);
    }
    tr.states.push_back(std::move(next));
    tr.times.push_back(static_cast<double>(s + 1) * dt);
  }
  return tr;
}

Trajectory integrate_vertical(const GradedAlgebra& alg, const ControlSpec& spec, const Point& p0, double T, double dt) {
  return integrate_vertical(alg, spec, to_doubles(p0), T, dt);
}

// ---------------------------------------------------------------------------
// Conservation

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) {
  for (const auto& [m, c] : f.terms()) {
    Term t{c.get_d(), {}};
    for (const auto& [v, e] : m.factors()) t.factors.emplace_back(v, e);
    terms_.push_back(std::move(t));
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  double s = 0;
  for (const Term& t : terms_) {
    double v = t.c;
    for (const auto& [k, e] : t.factors)
      for (unsigned i = 0; i < e; ++i) v *= x[k];
    s += v;
  }
  return s;
}

double ConservationReport::max_drift() const {
  double m = 0;
  for (const auto& e : entries) m = std::max(m, e.max_drift);
  return m;
}

namespace {

template <class F>
DriftEntry drift_of(const std::string& name, const Trajectory& traj, double tolerance, F&& f) {
  DriftEntry e;
  e.name = name;
  if (traj.states.empty()) return e;
  const double f0 = f(traj.states.front());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double d = std::abs(f(traj.states[i]) - f0);
    if (!(d <= e.max_drift)) {
      e.max_drift = d;
      e.max_index = i;
    }
    if (!(d < tolerance) && !e.first_violation) e.first_violation = i;
  }
  e.pass = !e.first_violation.has_value();
  return e;
}

}  // namespace

ConservationReport conservation_report(const std::vector<CasimirFunction>& casimirs, const ControlSpec& spec, const Trajectory& traj,
                                       double tolerance) {
  ConservationReport rep;
  rep.tolerance = tolerance;
  for (const auto& c : casimirs) {
    const CompiledPolynomial f(c.polynomial);
    rep.entries.push_back(drift_of(format_polynomial(c.polynomial), traj, tolerance, [&](const std::vector<double>& x) { return f(x); }));
  }
  rep.entries.push_back(drift_of("H2", traj, tolerance, [&](const std::vector<double>& x) {
    return energy(spec, std::span<const double>(x.data(), spec.dimension()));
  }));
  for (const auto& e : rep.entries) rep.pass = rep.pass && e.pass;
  return rep;
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::heisenberg: return "heisenberg";
    case OrbitKind::engel: return "engel";
    case OrbitKind::not_2d: return "not_2d";
  }
  return "not_2d";
}

OrbitKind classify_2d_orbit(const Point& p) {
  const OrbitReport rep = classify_orbit(p);
  if (rep.orbit_dim != 2) return OrbitKind::not_2d;
  return evaluate_matrix(block(p.algebra(), 1, 2), p).is_zero() ? OrbitKind::heisenberg : OrbitKind::engel;
}

std::string to_string(BehaviorKind k) {
  switch (k) {
    case BehaviorKind::constant: return "constant";
    case BehaviorKind::periodic: return "periodic";
    case BehaviorKind::asymptotically_constant: return "asymptotically_constant";
    case BehaviorKind::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

using Vec = std::vector<double>;

double dist2(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double norm(const Vec& a) { return std::sqrt(dist2(a, Vec(a.size(), 0.0))); }

}  // namespace

Behavior behavior_classify(const Trajectory& traj, const BehaviorTolerances& tol) {
  Behavior out;
  const std::size_t n = traj.states.size();
  const std::size_t r = traj.first_layer;
  if (n < 3 || r == 0) return out;
  std::vector<Vec> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i].assign(traj.states[i].begin(), traj.states[i].begin() + static_cast<std::ptrdiff_t>(r));
  const double dt = traj.step_size;

  double sup = 0;
  for (const auto& x : h)
    for (std::size_t k = 0; k < r; ++k) sup = std::max(sup, std::abs(x[k] - h[0][k]));
  if (sup < tol.constancy) {
    out.kind = BehaviorKind::constant;
    return out;
  }

  std::vector<Vec> vel(n, Vec(r));
  for (std::size_t k = 0; k < r; ++k) {
    vel[0][k] = (-3 * h[0][k] + 4 * h[1][k] - h[2][k]) / (2 * dt);
    vel[n - 1][k] = (3 * h[n - 1][k] - 4 * h[n - 2][k] + h[n - 3][k]) / (2 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i) vel[i][k] = (h[i + 1][k] - h[i - 1][k]) / (2 * dt);
  }

  // First return: a local minimum of |h - h0|^2 after leaving the tolerance ball.
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = dist2(h[i], h[0]);
  const double leave = 100 * tol.periodicity * tol.periodicity;
  std::size_t i = 1;
  while (i < n && d[i] <= leave) ++i;
  for (; i + 1 < n; ++i) {
    if (!(d[i] <= d[i - 1] && d[i] <= d[i + 1])) continue;
    const double curv = d[i - 1] - 2 * d[i] + d[i + 1];
    double offset = 0;
    double dmin = d[i];
    if (curv > 0) {
      offset = (d[i - 1] - d[i + 1]) / (2 * curv);
      dmin = d[i] - (d[i - 1] - d[i + 1]) * (d[i - 1] - d[i + 1]) / (8 * curv);
    }
    if (std::sqrt(std::max(dmin, 0.0)) >= tol.periodicity) continue;
    const std::size_t j = offset >= 0 ? i + 1 : i - 1;
    const double w = std::abs(offset);
    Vec v(r);
    for (std::size_t k = 0; k < r; ++k) v[k] = (1 - w) * vel[i][k] + w * vel[j][k];
    if (std::sqrt(dist2(v, vel[0])) < tol.periodicity * std::max(1.0, norm(vel[0]))) {
      out.kind = BehaviorKind::periodic;
      out.period = (static_cast<double>(i) + offset) * dt;
      return out;
    }
  }

  const std::size_t start = n - n / 4;
  bool decreasing = n / 4 >= 2;
  for (std::size_t k = start + 1; k < n && decreasing; ++k) decreasing = norm(vel[k]) <= norm(vel[k - 1]) * (1 + 1e-12);
  if (decreasing && norm(vel[n - 1]) < tol.velocity) out.kind = BehaviorKind::asymptotically_constant;
  return out;
}

}  // namespace carnot
