#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "carnot/exact_linalg.hpp"
#include "carnot/lie_algebra.hpp"
#include "carnot/poisson.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

/// Affine subspace of g* cut out by linear conditions on the top-degree
/// coordinates. Conditions are solved for their lowest-index coordinate as
/// they are added, so the stored substitution is always fully reduced.
class Stratum {
 public:
  Stratum() = default;
  explicit Stratum(GradedAlgebra alg, std::string description = {});

  /// Fixes every top-degree coordinate to its value at p; p becomes the witness.
  static Stratum at_point(const Point& p);

  /// Imposes form(x) = value. `form` must involve only top-degree basis
  /// elements. Throws StratumError if inconsistent with earlier conditions;
  /// a redundant condition is accepted.
  void constrain(const LieElement& form, const Rational& value = 0);
  /// Names may be iterated-bracket symbols such as "x312".
  void set_zero(std::string_view name);
  void identify(std::string_view a, std::string_view b);

  /// Throws StratumError if p violates a condition.
  void set_witness(const Point& p);

  const GradedAlgebra& algebra() const noexcept { return alg_; }
  const std::string& description() const noexcept { return description_; }
  void set_description(std::string d) { description_ = std::move(d); }
  const std::map<std::size_t, Polynomial>& substitution() const noexcept { return sigma_; }
  const std::optional<Point>& witness() const noexcept { return witness_; }
  /// All top-degree coordinates are fixed (classification at a point).
  bool pointwise() const noexcept { return pointwise_; }
  /// Human-readable conditions, e.g. "x123 = x213".
  std::vector<std::string> conditions() const;

  Polynomial reduce(const Polynomial& f) const;
  PolyMatrix reduce(const PolyMatrix& m) const;
  PolyVector reduce(const PolyVector& v) const;
  bool vanishes(const Polynomial& f) const { return reduce(f).is_zero(); }
  bool contains(const Point& p) const;

  /// Random point of the stratum; unconstrained coordinates are drawn from
  /// small integers.
  Point sample(std::mt19937_64& rng) const;

 private:
  GradedAlgebra alg_;
  std::string description_;
  std::map<std::size_t, Polynomial> sigma_;
  std::optional<Point> witness_;
  bool pointwise_ = false;
};

/// The degree-3 analysis of B^{12} over a stratum.
struct OrbitAnalysis {
  Stratum stratum;
  PolyMatrix b12;                     // B^{12} reduced modulo the stratum
  PolyMatrix reduced_b12;             // row echelon form
  PolyMatrix transform;               // r x r, transform * b12 = reduced_b12
  std::vector<std::size_t> row_order; // original row of each reduced row
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
  std::vector<PolyVector> h1_basis;   // coefficient vectors over x_1..x_r
  PolyMatrix c_matrix;                // B^{11} restricted to h1
  std::vector<PolyVector> kernel_k;   // coefficient vectors over x_1..x_r
};

/// Fraction-free stepwise reduction of B^{12} modulo the stratum, followed by
/// h1, C = B^{11}|h1 and k = Ker C. Pivots are taken column by column; in a
/// column the admissible entry with fewest monomials wins, ties to the lowest
/// row. With a witness point, an entry is admissible only when it does not
/// vanish there. Requires step 3.
OrbitAnalysis stepwise_reduce(const Stratum& stratum);

/// Casimirs of the stratum linear in the degree-2 coordinates: one
/// (rank+1)-minor of B^{12} bordered by the coordinate row per non-pivot column.
std::vector<Polynomial> kernel_casimirs_on_stratum(const OrbitAnalysis& a);

/// The data attached to one kernel vector gamma.
struct GammaConstruction {
  PolyVector gamma;                 // over x_1..x_r, content removed
  std::vector<PolyVector> y;        // y_i = [zeta_i, gamma] over the degree-2 basis
  PolyVector b;                     // b_i = y_i(x)
  PolyMatrix d_matrix;              // D_ij = B^{12}(zeta_i, y_j)
  std::size_t d_rank = 0;
  std::vector<std::size_t> d_pivots;
  std::vector<PolyVector> ker_d;    // kernel of D over the pivot rows
  PolyVector eta1;                  // indexed by d_pivots
  PolyVector eta2;                  // indexed by pivot columns of B^{12}
  PolyVector gamma_bar;             // rescaled gamma
  Polynomial function;              // canonical orbit function
};

std::vector<GammaConstruction> orbit_constructions(const OrbitAnalysis& a);
std::vector<Polynomial> orbit_functions(const OrbitAnalysis& a);

/// {x_i, f} for every generator, reduced modulo the stratum.
PolyVector brackets_with_generators(const Stratum& stratum, const Polynomial& f);

enum class ConstancySubspace { h2, ker_d };

struct ConstancyCheck {
  bool holds = true;
  std::vector<std::string> witnesses;  // "{x1, f} = ..." for each failure
};

/// Checks that every element of [h1, h1] (h2) or of the span of Ker D
/// (ker_d) Poisson-commutes with g_1 modulo the stratum.
ConstancyCheck verify_constancy(const OrbitAnalysis& a, ConstancySubspace which);

struct QuadricData {
  std::size_t rank = 0;
  Inertia inertia;
};

struct OrbitReport {
  std::size_t rank_b12 = 0;
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  std::size_t orbit_dim = 0;
  std::string type_label;
  std::vector<QuadricData> quadrics;        // one per kernel vector gamma
  std::optional<int> det_d_sign;            // when a single D is square nonsingular
  std::vector<Polynomial> defining_functions;
  std::size_t defining_rank = 0;            // rank of their differentials at p
};

/// Classification at a rational point (step 3). The r = 3 label follows the
/// rank table for free Carnot groups of step 3 and rank 3.
OrbitReport classify_orbit(const Point& p);

/// Preset strata for (3,3): x312 = x313 = x323 = 0 (so x123 = x213); the
/// degenerate variant also sets x123 = x223 = 0. The witness points lie on
/// the respective strata and keep every reduction pivot nonzero.
Stratum rank3_preset_stratum(const GradedAlgebra& alg, bool degenerate);

}  // namespace carnot
