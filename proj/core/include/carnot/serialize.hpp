#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "carnot/casimir.hpp"
#include "carnot/flow.hpp"
#include "carnot/orbit.hpp"
#include "carnot/poisson.hpp"

namespace carnot {

/// JSON documents. Every document carries a "schema" key "carnot/<kind>@1";
/// keys are emitted in a fixed order and polynomials in canonical text.

std::string dims_json(int rank, int step);
std::string basis_json(const GradedAlgebra& alg);
std::string matrix_json(const PolyMatrix& m, std::string_view name);

struct VerifiedFunction {
  CasimirFunction function;
  std::optional<CasimirCheck> check;  // present when verification ran
};
std::string casimirs_json(const GradedAlgebra& alg, const std::vector<VerifiedFunction>& functions);

struct VerifyLine {
  std::size_t line = 0;
  std::string text;
  Polynomial polynomial;
  CasimirCheck check;
};
std::string verify_json(const GradedAlgebra& alg, const std::vector<VerifyLine>& lines);

std::string orbit_report_json(const Point& p, const OrbitReport& report);
std::string stratum_analysis_json(const OrbitAnalysis& a, const std::vector<Polynomial>& kernel_casimirs,
                                  const std::vector<GammaConstruction>& constructions);

std::string flow_json(const GradedAlgebra& alg, double T, double dt, const ConservationReport& report, const Behavior& behavior);

/// Header "t,<coordinate names>", one row per sample, 17 significant digits.
std::string trajectory_csv(const GradedAlgebra& alg, const Trajectory& traj);

/// {"x12": "1", "x112": "-3/2", ...}; names are basis names or bracket
/// symbols of a single basis element; missing coordinates are 0.
Point parse_point_json(const GradedAlgebra& alg, std::string_view text);

/// {"set_zero": [names], "identify": [[a, b]], "witness_point": {name: value},
///  "description": text}; every key optional.
Stratum parse_stratum_json(const GradedAlgebra& alg, std::string_view text);

/// Symmetric positive definite matrix given as rows of rationals.
RationalMatrix parse_matrix_json(std::string_view text);

}  // namespace carnot
