#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "carnot/casimir.hpp"
#include "carnot/exact_linalg.hpp"
#include "carnot/lie_algebra.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

/// Ellipsoidal control set U = {u : u^T M u <= 1}.
class ControlSpec {
 public:
  /// Throws InputError unless m is symmetric positive definite.
  explicit ControlSpec(RationalMatrix m);
  static ControlSpec identity(std::size_t r);

  const RationalMatrix& matrix() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return m_.rows(); }
  /// M^{-1} as doubles, row-major.
  const std::vector<double>& inverse() const noexcept { return inv_; }

 private:
  RationalMatrix m_;
  std::vector<double> inv_;
};

struct HamiltonianValue {
  double value = 0;
  std::vector<double> gradient;
};

/// Support function H(h) = sqrt(h^T M^{-1} h) and its gradient. Throws
/// PreconditionError at h = 0.
HamiltonianValue hamiltonian(const ControlSpec& spec, std::span<const double> h);

/// H2(h) = 1/2 h^T M^{-1} h.
double energy(const ControlSpec& spec, std::span<const double> h);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;  // full coordinate vectors
  double step_size = 0;
  std::size_t first_layer = 0;              // number of degree-1 coordinates
  std::string method = "rk4";
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& msg, std::size_t last_valid) : std::runtime_error(msg), last_valid_(last_valid) {}
  std::size_t last_valid_index() const noexcept { return last_valid_; }

 private:
  std::size_t last_valid_;
};

/// The vertical field p' = -B_p grad H2 with structure constants compiled to doubles.
class VerticalField {
 public:
  VerticalField(const GradedAlgebra& alg, const ControlSpec& spec);
  void operator()(std::span<const double> p, std::span<double> out) const;
  std::size_t dimension() const noexcept { return n_; }

 private:
  struct Term {
    std::size_t b;  // degree-1 index
    std::size_t k;  // coordinate of [e_a, e_b]
    double c;
  };
  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<double> inv_;
  std::vector<std::vector<Term>> rows_;
};

/// Fixed-step classical Runge-Kutta on [0, T] with round(T/dt) steps.
Trajectory integrate_vertical(const GradedAlgebra& alg, const ControlSpec& spec, const std::vector<double>& p0, double T, double dt);
Trajectory integrate_vertical(const GradedAlgebra& alg, const ControlSpec& spec, const Point& p0, double T, double dt);

std::vector<double> to_doubles(const Point& p);

/// Polynomial compiled for double evaluation.
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const Polynomial& f);
  double operator()(std::span<const double> x) const;

 private:
  struct Term {
    double c;
    std::vector<std::pair<std::size_t, unsigned>> factors;
  };
  std::vector<Term> terms_;
};

struct DriftEntry {
  std::string name;
  double max_drift = 0;
  std::size_t max_index = 0;
  std::optional<std::size_t> first_violation;
  bool pass = true;
};

struct ConservationReport {
  double tolerance = 0;
  std::vector<DriftEntry> entries;  // every Casimir, then "H2"
  bool pass = true;
  double max_drift() const;
};

ConservationReport conservation_report(const std::vector<CasimirFunction>& casimirs, const ControlSpec& spec, const Trajectory& traj,
                                       double tolerance = 1e-8);

enum class OrbitKind { heisenberg, engel, not_2d };
std::string to_string(OrbitKind k);

/// Two-dimensional orbits: heisenberg when B^{12}_p = 0, engel otherwise.
OrbitKind classify_2d_orbit(const Point& p);

struct BehaviorTolerances {
  double constancy = 1e-10;
  double periodicity = 1e-4;
  double velocity = 1e-6;
};

enum class BehaviorKind { constant, periodic, asymptotically_constant, undetermined };
std::string to_string(BehaviorKind k);

struct Behavior {
  BehaviorKind kind = BehaviorKind::undetermined;
  std::optional<double> period;
};

/// Classifies the first-layer part of a trajectory.
Behavior behavior_classify(const Trajectory& traj, const BehaviorTolerances& tol = {});

}  // namespace carnot
