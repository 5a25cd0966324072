#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace carnot::testing {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CARNOT_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Point random_point(const GradedAlgebra& alg, std::mt19937_64& rng, double sparsity) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  std::bernoulli_distribution zero(sparsity);
  Point p(alg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (zero(rng)) continue;
    Rational q(num(rng), den(rng));
    q.canonicalize();
    p[i] = q;
  }
  return p;
}

Point unit_point(const GradedAlgebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-8, 8);
  Point p(alg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational q(num(rng), 8);
    q.canonicalize();
    p[i] = q;
  }
  return p;
}

Polynomial random_polynomial(const GradedAlgebra& alg, std::mt19937_64& rng, int terms, int degree) {
  std::uniform_int_distribution<std::size_t> var(0, alg.dimension() - 1);
  std::uniform_int_distribution<int> deg(0, degree), coeff(-5, 5);
  Polynomial f;
  for (int t = 0; t < terms; ++t) {
    std::vector<Monomial::Factor> fs;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) fs.emplace_back(static_cast<std::uint32_t>(var(rng)), 1);
    f += Polynomial::monomial(alg, Monomial::from_factors(fs), coeff(rng));
  }
  return f;
}

RationalMatrix gradient_matrix(const std::vector<Polynomial>& fs, const Point& p) {
  std::vector<RationalVector> rows;
  for (const auto& f : fs) rows.push_back(gradient_at(f, p));
  return from_rows(rows, p.size());
}

std::size_t gradient_rank(const std::vector<Polynomial>& fs, const Point& p) {
  return rank(gradient_matrix(fs, p));
}

bool same_span(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix both(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) both(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) both(a.rows() + i, j) = b(i, j);
  const auto r = rank(both);
  return r == rank(a) && r == rank(b);
}

}  // namespace carnot::testing
