#include <doctest.h>

#include "carnot/casimir.hpp"
#include "carnot/errors.hpp"
#include "carnot/poisson.hpp"
#include "support.hpp"

using namespace carnot;
using carnot::testing::gradient_rank;
using carnot::testing::random_point;

namespace {

std::vector<Polynomial> polys(const std::vector<CasimirFunction>& fs) {
  std::vector<Polynomial> out;
  for (const auto& f : fs) out.push_back(f.polynomial);
  return out;
}

}  // namespace

TEST_SUITE("casimir_gen") {
  TEST_CASE("Cartan group: two linear Casimirs and the quadratic") {
    const auto alg = build_algebra(2, 3);
    const auto set = complete_system(alg);
    REQUIRE(set.linear.size() == 2);
    REQUIRE(set.quadratic_on_levels.size() == 1);
    CHECK(set.minor.empty());
    const auto expected = parse_polynomial(alg, "1/2*x12^2 + x1*x212 - x2*x112");
    CHECK(canonicalize(set.quadratic_on_levels[0].polynomial) == canonicalize(expected));
    for (const auto& f : set.all()) CHECK(is_casimir(alg, f.polynomial).casimir);
  }

  TEST_CASE("step 4, rank 2: the quartic") {
    const auto alg = build_algebra(2, 4);
    const auto q = quadratic_casimirs_step4(alg);
    REQUIRE(q.size() == 1);
    const auto expected = parse_polynomial(
        alg, "x12*(x1112*x2212 - x1212^2) - 1/2*x2212*x112^2 - 1/2*x1112*x212^2 + x1212*x112*x212");
    CHECK(canonicalize(q[0]) == canonicalize(expected));
    CHECK(is_casimir(alg, q[0]).casimir);
  }

  TEST_CASE("theorem counts for step 3") {
    for (int r = 3; r <= 5; ++r) {
      const auto alg = build_algebra(r, 3);
      const auto set = complete_system(alg);
      CHECK(set.linear.size() == static_cast<std::size_t>((r * r * r - r) / 3));
      CHECK(set.minor.size() == static_cast<std::size_t>((r * r - 3 * r) / 2));
      for (const auto& f : set.minor) {
        CHECK(f.polynomial.total_degree() == static_cast<std::uint32_t>(r + 1));
        CHECK(is_casimir(alg, f.polynomial).casimir);
      }
    }
  }

  TEST_CASE("all-subsets minors are Casimirs but not independent") {
    const auto alg = build_algebra(4, 3);
    const auto all = minor_casimirs(alg, WindowMode::all_subsets);
    CHECK(all.size() == 6);
    for (const auto& f : all) CHECK(is_casimir(alg, f).casimir);
    std::mt19937_64 rng(1);
    const Point p = random_point(alg, rng);
    auto with_linear = linear_casimirs(alg);
    const auto base = gradient_rank(with_linear, p);
    with_linear.insert(with_linear.end(), all.begin(), all.end());
    CHECK(gradient_rank(with_linear, p) == base + 2);
  }

  TEST_CASE("complete systems are functionally independent at random points") {
    std::mt19937_64 rng(17);
    const std::vector<std::tuple<int, int, std::size_t>> cases{{2, 3, 3}, {3, 3, 8}, {4, 3, 22}, {2, 4, 4}};
    for (auto [r, s, count] : cases) {
      const auto alg = build_algebra(r, s);
      const auto fs = polys(complete_system(alg).all());
      REQUIRE(fs.size() == count);
      const Point p = random_point(alg, rng);
      CHECK(gradient_rank(fs, p) == count);
      CHECK(count + rank_at(bivector(alg), p) == alg.dimension());
    }
  }

  TEST_CASE("appendix functions against bordered minors") {
    const auto alg = build_algebra(4, 3);
    const auto c1 = parse_polynomial(alg, carnot::testing::read_data("appendix_c1.txt"));
    CHECK(is_casimir(alg, c1).casimir);
    const auto c2 = parse_polynomial(alg, carnot::testing::read_data("appendix_c2.txt"));
    CHECK(!is_casimir(alg, c2).casimir);
    // Bordered minor over the columns x13, x14, x23, x24, x34.
    const auto b12 = block(alg, 1, 2);
    const std::vector<std::size_t> cols{1, 2, 3, 4, 5};
    Polynomial minor;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> rest;
      for (std::size_t t = 0; t < cols.size(); ++t)
        if (t != k) rest.push_back(cols[t]);
      const auto term = Polynomial::variable(alg, b12.col_labels()[cols[k]]) * determinant(b12.submatrix({0, 1, 2, 3}, rest));
      minor += k % 2 ? -term : term;
    }
    CHECK(is_casimir(alg, minor).casimir);
    const auto x34 = *alg.find("x34"), x13 = *alg.find("x13");
    const auto printed = c2.coefficients_in(x34), expected = minor.coefficients_in(x34);
    CHECK(printed[0] == expected[0]);
    CHECK(printed[1] != expected[1]);
    CHECK(printed[1] == c2.coefficients_in(x13)[1]);
  }

  TEST_CASE("non-Casimirs come with a witness bracket") {
    const auto alg = build_algebra(2, 3);
    const auto c = is_casimir(alg, Polynomial::variable(alg, "x1"));
    CHECK(!c.casimir);
    CHECK(c.generator == 2);
    CHECK(format_polynomial(c.witness) == "-x12");
    CHECK(is_casimir(alg, Polynomial(5)).casimir);
  }

  TEST_CASE("roles and provenance are filled in") {
    const auto set = complete_system(build_algebra(4, 3));
    for (const auto& f : set.linear) CHECK(f.role == "linear");
    for (const auto& f : set.minor) {
      CHECK(f.role == "minor");
      CHECK(!f.provenance.empty());
    }
  }

  TEST_CASE("unsupported inputs") {
    CHECK_THROWS_AS((void)complete_system(build_algebra(3, 2)), UnsupportedError);
    CHECK_THROWS_AS((void)minor_casimirs(build_algebra(2, 3)), PreconditionError);
  }
}
