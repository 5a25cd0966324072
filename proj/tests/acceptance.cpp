#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>

#include "carnot/casimir.hpp"
#include "carnot/flow.hpp"
#include "carnot/orbit.hpp"
#include "carnot/poisson.hpp"
#include "support.hpp"

using namespace carnot;
using carnot::testing::gradient_matrix;
using carnot::testing::gradient_rank;
using carnot::testing::random_point;
using carnot::testing::random_polynomial;
using carnot::testing::read_data;
using carnot::testing::unit_point;
using carnot::testing::same_span;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

std::vector<Polynomial> polys(const std::vector<CasimirFunction>& fs) {
  std::vector<Polynomial> out;
  for (const auto& f : fs) out.push_back(f.polynomial);
  return out;
}

Point point_of(const GradedAlgebra& alg, std::vector<std::pair<const char*, int>> coords) {
  Point p(alg);
  for (auto [n, v] : coords) p.set(n, v);
  return p;
}

void dimension_table(Outcome& o) {
  for (int r = 2; r <= 6; ++r) {
    o.require(graded_dimension(r, 2) == static_cast<std::uint64_t>((r * r - r) / 2), "dim g2 r=" + std::to_string(r));
    o.require(graded_dimension(r, 3) == static_cast<std::uint64_t>((r * r * r - r) / 3), "dim g3 r=" + std::to_string(r));
  }
  const auto alg = build_algebra(4, 3);
  o.require(alg.degree_size(1) == 4 && alg.degree_size(2) == 6 && alg.degree_size(3) == 20, "(4,3) layers");
  o.require(alg.dimension() == 30, "(4,3) total");
  const auto set = complete_system(alg);
  o.require(set.linear.size() == 20, "20 linear Casimirs");
  o.require(alg.dimension() - set.size() == 8, "8-dimensional generic orbits");
}

void cartan(Outcome& o) {
  const auto alg = build_algebra(2, 3);
  const auto set = complete_system(alg);
  o.require(set.linear.size() == 2, "linear count");
  o.require(set.minor.empty() && set.quadratic_on_levels.size() == 1, "one quadratic");
  if (set.quadratic_on_levels.size() == 1) {
    const auto expected = parse_polynomial(alg, "1/2*x12^2 + x1*x212 - x2*x112");
    o.require(canonicalize(set.quadratic_on_levels[0].polynomial) == canonicalize(expected),
              "quadratic is " + format_polynomial(set.quadratic_on_levels[0].polynomial));
  }
}

void step4_quartic(Outcome& o) {
  const auto alg = build_algebra(2, 4);
  const auto q = quadratic_casimirs_step4(alg);
  o.require(q.size() == 1, "one function");
  if (q.size() != 1) return;
  const auto expected =
      parse_polynomial(alg, "x12*(x1112*x2212 - x1212^2) - 1/2*x2212*x112^2 - 1/2*x1112*x212^2 + x1212*x112*x212");
  o.require(canonicalize(q[0]) == canonicalize(expected), "quartic is " + format_polynomial(q[0]));
}

void appendix(Outcome& o) {
  const auto alg = build_algebra(4, 3);
  std::vector<Polynomial> given;
  for (const char* name : {"appendix_c1.txt", "appendix_c2.txt"}) {
    const auto f = parse_polynomial(alg, read_data(name));
    const auto c = is_casimir(alg, f);
    o.require(c.casimir, std::string(name) + " is not a Casimir ({x" + std::to_string(c.generator) + ", f} has " +
                             std::to_string(c.witness.size()) + " terms)");
    o.require(f.total_degree() == 5, std::string(name) + " degree");
    given.push_back(f);
  }
  const auto set = complete_system(alg);
  const auto linear = polys(set.linear);
  auto own = polys(set.minor);
  o.require(own.size() == 2, "two own minors");
  for (const auto& f : own) {
    o.require(is_casimir(alg, f).casimir, "own minor fails");
    o.require(f.total_degree() == 5, "own minor degree");
  }
  own.insert(own.end(), linear.begin(), linear.end());
  given.insert(given.end(), linear.begin(), linear.end());
  std::mt19937_64 rng(0xA99E);
  int mismatches = 0;
  for (int t = 0; t < 10; ++t) {
    const Point p = random_point(alg, rng);
    mismatches += !same_span(gradient_matrix(own, p), gradient_matrix(given, p));
  }
  o.require(mismatches == 0, "gradient spans differ at " + std::to_string(mismatches) + "/10 points");
}

void example_strata(Outcome& o) {
  const auto alg = build_algebra(3, 3);
  const std::string kernel = "x12*(x113*x223 - x213*x123) + x13*(x212*x123 - x112*x223) + x23*(x112*x213 - x113*x212)";
  const auto shown = [](const Stratum& s, const std::string& text) {
    return canonicalize(s.reduce(parse_polynomial(s.algebra(), text)));
  };
  const Stratum s = rank3_preset_stratum(alg, false);
  const auto a = stepwise_reduce(s);
  const auto kc = kernel_casimirs_on_stratum(a);
  o.require(kc.size() == 1 && canonicalize(kc[0]) == shown(s, kernel), "kernel Casimir");
  const auto of = orbit_functions(a);
  o.require(of.size() == 1 &&
                of[0] == shown(s, "x3*(x113*x223 - x123^2) - 1/2*(x13^2*x223 - x13*x23*(x123 + x213) + x23^2*x113)"),
            "nondegenerate orbit function");
  const Stratum d = rank3_preset_stratum(alg, true);
  const auto ad = stepwise_reduce(d);
  const auto dkc = kernel_casimirs_on_stratum(ad);
  o.require(dkc.size() == 1 && canonicalize(dkc[0]) == shown(d, kernel), "degenerate kernel Casimir");
  const auto dof = orbit_functions(ad);
  o.require(dof.size() == 1 && dof[0] == shown(d, "x3*x113*x212 - 1/2*x13^2*x212 - x12*x23*x113 + x13*x23*x112"),
            "degenerate orbit function");
}

void table5(Outcome& o) {
  const auto alg = build_algebra(3, 3);
  const auto b = bivector(alg);
  const auto b12 = block(alg, 1, 2);
  struct Row {
    Point p;
    std::size_t rank_b12;
    std::string label;
    std::size_t dim;
  };
  const std::vector<Row> rows{
      {make_generic_point(alg), 3, "affine subspace", 6},
      {point_of(alg, {{"x113", 1}, {"x223", -1}}), 2, "R^2 x hyperbolic paraboloid", 4},
      {point_of(alg, {{"x113", 1}, {"x223", 1}}), 2, "R^2 x elliptic paraboloid", 4},
      {point_of(alg, {{"x113", 1}, {"x212", 1}}), 2, "parabolic cylinder", 4},
      {point_of(alg, {{"x112", 1}, {"x23", 1}}), 1, "affine subspace", 4},
      {point_of(alg, {{"x112", 1}}), 1, "affine subspace", 2},
      {point_of(alg, {{"x12", 1}}), 0, "affine subspace", 2},
      {Point(alg), 0, "point", 0},
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string tag = "row " + std::to_string(i + 1);
    o.require(rank_at(b12, row.p) == row.rank_b12, tag + " point does not realise rank B12");
    o.require(rank_at(b, row.p) == row.dim, tag + " point does not realise the orbit dimension");
    const auto rep = classify_orbit(row.p);
    o.require(rep.type_label == row.label && rep.orbit_dim == row.dim,
              tag + " gave " + rep.type_label + ", dim " + std::to_string(rep.orbit_dim));
  }
}

void theorem_counts(Outcome& o) {
  std::mt19937_64 rng(0x7e0);
  for (int r = 3; r <= 5; ++r) {
    const auto alg = build_algebra(r, 3);
    const auto set = complete_system(alg);
    const std::string tag = "r=" + std::to_string(r);
    o.require(set.linear.size() == static_cast<std::size_t>((r * r * r - r) / 3), tag + " linear count");
    o.require(set.minor.size() == static_cast<std::size_t>((r * r - 3 * r) / 2), tag + " minor count");
    const auto fs = polys(set.all());
    for (const auto& f : fs) o.require(is_casimir(alg, f).casimir, tag + " non-Casimir");
    const auto at_generic = gradient_rank(fs, make_generic_point(alg));
    const auto at_random = gradient_rank(fs, random_point(alg, rng));
    o.require(at_generic == fs.size(), tag + " differential rank " + std::to_string(at_generic) + " at the generic point, " +
                                           std::to_string(fs.size()) + " functions (rank " + std::to_string(at_random) +
                                           " at a random point)");
  }
}

void structural(Outcome& o) {
  for (auto [r, s] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 3}, {3, 4}, {4, 3}, {5, 3}}) {
    const auto alg = build_algebra(r, s);
    const std::size_t n = alg.dimension();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        ok = alg.bracket_basis(i, j) == -alg.bracket_basis(j, i);
        const auto a = LieElement::basis(i), b = LieElement::basis(j);
        for (std::size_t k = j + 1; k < n && ok; ++k) {
          const auto c = LieElement::basis(k);
          ok = (alg.bracket(a, alg.bracket(b, c)) + alg.bracket(b, alg.bracket(c, a)) + alg.bracket(c, alg.bracket(a, b)))
                   .is_zero();
        }
      }
    o.require(ok, "Jacobi/antisymmetry in (" + std::to_string(r) + "," + std::to_string(s) + ")");
  }
  std::mt19937_64 rng(0x5a1);
  const auto a33 = build_algebra(3, 3);
  const auto pb = [&](const Polynomial& f, const Polynomial& g) { return poisson_bracket(a33, f, g); };
  int leibniz = 0, jacobi = 0;
  for (int t = 0; t < 50; ++t) {
    const auto f = random_polynomial(a33, rng, 3, 2), g = random_polynomial(a33, rng, 3, 2),
               h = random_polynomial(a33, rng, 3, 2);
    leibniz += pb(f, g * h) != pb(f, g) * h + g * pb(f, h);
    jacobi += !(pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g))).is_zero();
  }
  o.require(leibniz == 0, "Leibniz fails on " + std::to_string(leibniz) + " triples");
  o.require(jacobi == 0, "Poisson Jacobi fails on " + std::to_string(jacobi) + " triples");
  int law = 0;
  for (int r = 2; r <= 4; ++r) {
    const auto alg = build_algebra(r, 3);
    const auto b = bivector(alg);
    for (int t = 0; t < 100; ++t) {
      const Point p = random_point(alg, rng, t % 2 ? 0.0 : 0.75);
      const auto rep = classify_orbit(p);
      law += rep.orbit_dim % 2 != 0 || rep.orbit_dim != 2 * static_cast<std::size_t>(r) - rep.k1 - rep.k2 ||
             rep.orbit_dim != rank_at(b, p);
    }
  }
  o.require(law == 0, "dimension law fails at " + std::to_string(law) + " points");
  for (bool degenerate : {false, true}) {
    const Stratum s = rank3_preset_stratum(a33, degenerate);
    for (const auto& c : orbit_constructions(stepwise_reduce(s)))
      o.require(s.reduce(c.d_matrix).is_symmetric(), "D not symmetric");
  }
}

double max_drift(const GradedAlgebra& alg, const std::vector<CasimirFunction>& cs, const Point& p, double dt) {
  const auto spec = ControlSpec::identity(alg.rank());
  return conservation_report(cs, spec, integrate_vertical(alg, spec, p, 10, dt)).max_drift();
}

void conservation(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(0xC0DE);
  for (int r : {2, 3}) {
    const auto alg = build_algebra(r, 3);
    const auto cs = complete_system(alg).all();
    std::vector<Point> points;
    for (int t = 0; t < 5; ++t) points.push_back(unit_point(alg, rng));
    std::vector<std::future<std::array<double, 3>>> runs;
    for (const auto& p : points)
      runs.push_back(std::async(std::launch::async, [&alg, &cs, p] {
        return std::array<double, 3>{max_drift(alg, cs, p, 1e-3), max_drift(alg, cs, p, 2e-2), max_drift(alg, cs, p, 1e-2)};
      }));
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto [fine, coarse, half] = runs[i].get();
      const std::string tag = "r=" + std::to_string(r) + " point " + std::to_string(i);
      o.require(fine < 1e-8, tag + " drift " + std::to_string(fine));
      o.require(coarse >= 12 * half, tag + " order ratio " + std::to_string(coarse / half));
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds < 30, "runtime " + std::to_string(seconds) + " s");
}

void dichotomy(Outcome& o) {
  const auto a2 = build_algebra(2, 3);
  o.require(classify_2d_orbit(point_of(a2, {{"x12", 1}})) == OrbitKind::heisenberg, "Cartan plane");
  const auto a3 = build_algebra(3, 3);
  o.require(classify_2d_orbit(point_of(a3, {{"x112", 1}})) == OrbitKind::engel, "(3,3) cylinder point");
  const auto traj = integrate_vertical(a2, ControlSpec::identity(2), point_of(a2, {{"x1", 1}, {"x12", 1}}), 10, 1e-3);
  const auto b = behavior_classify(traj);
  o.require(b.kind == BehaviorKind::periodic, "circle classified " + to_string(b.kind));
  o.require(b.period && std::abs(*b.period - 2 * std::numbers::pi) < 1e-3, "period");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"dimension table", dimension_table},
      {"Cartan reproduction", cartan},
      {"step-4 quartic", step4_quartic},
      {"appendix golden test", appendix},
      {"rank-3 strata displays", example_strata},
      {"rank-3 orbit classifier", table5},
      {"theorem-count property", theorem_counts},
      {"structural property suite", structural},
      {"conservation at desk scale", conservation},
      {"Heisenberg/Engel dichotomy", dichotomy},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first;
    if (!o.pass) std::cout << "  (" << o.detail.str() << ")";
    std::cout << std::endl;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
