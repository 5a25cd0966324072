#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carnot/lie_algebra.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

struct CasimirCheck {
  bool casimir = true;
  int generator = 0;    // 1-based index of the first failing generator
  Polynomial witness;   // {x_generator, f}
};

/// Whether {x_i, f} = 0 for every generator x_i.
CasimirCheck is_casimir(const GradedAlgebra& alg, const Polynomial& f);

/// The top-degree coordinates.
std::vector<Polynomial> linear_casimirs(const GradedAlgebra& alg);

enum class WindowMode { consecutive, all_subsets };

/// Minors of B^{1,s-1} bordered by the row of degree-(s-1) coordinates:
///   F_i = sum_{j in J} (-1)^{j-i} eta_j det B^{1,s-1}[:, J \ {j}],
/// over J = {i, ..., i+r} (consecutive) or every (r+1)-subset. Throws
/// PreconditionError when dim g_{s-1} < dim g_1.
std::vector<Polynomial> minor_casimirs(const GradedAlgebra& alg, WindowMode mode = WindowMode::consecutive);

/// Step 4: for each gamma in the generic kernel of B_p on g_2, the function
/// det D * gamma(x) - 1/2 <adj D b, b> with y_i = [x_i, gamma], b_i = y_i(x)
/// and D_ij = [x_i, y_j].
std::vector<Polynomial> quadratic_casimirs_step4(const GradedAlgebra& alg);

struct CasimirFunction {
  std::string role;        // "linear", "minor" or "quadratic"
  std::string provenance;
  Polynomial polynomial;
};

struct CasimirSet {
  std::vector<CasimirFunction> linear;
  std::vector<CasimirFunction> minor;
  std::vector<CasimirFunction> quadratic_on_levels;

  std::vector<CasimirFunction> all() const;
  std::size_t size() const noexcept { return linear.size() + minor.size() + quadratic_on_levels.size(); }
};

/// Complete system for step 3 or 4. For (2, 3) the quadratic member is the
/// orbit function of the unconstrained stratum.
CasimirSet complete_system(const GradedAlgebra& alg);

}  // namespace carnot
