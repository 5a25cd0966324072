#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "carnot/exact_linalg.hpp"
#include "carnot/lie_algebra.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

using PolyVector = std::vector<Polynomial>;

/// Dense matrix of polynomials with optional row/column labels.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(GradedAlgebra alg, std::size_t rows, std::size_t cols);
  PolyMatrix(GradedAlgebra alg, std::vector<std::string> row_labels, std::vector<std::string> col_labels);

  const GradedAlgebra& algebra() const noexcept { return alg_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyVector row(std::size_t i) const;
  PolyMatrix transposed() const;
  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  bool is_zero() const;
  bool is_antisymmetric() const;
  bool is_symmetric() const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  GradedAlgebra alg_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<Polynomial> data_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyVector operator*(const PolyMatrix& a, const PolyVector& v);

/// Entry (a, b) = [e_a, e_b] as a linear polynomial, over the whole basis.
PolyMatrix bivector(const GradedAlgebra& alg);

/// The (g_m, g_n) sub-matrix of the bivector.
PolyMatrix block(const GradedAlgebra& alg, int row_degree, int col_degree);

/// Matrix of [xi_i, eta_j] as linear polynomials for arbitrary elements.
PolyMatrix bracket_matrix(const GradedAlgebra& alg, const std::vector<LieElement>& rows, const std::vector<LieElement>& cols);

RationalMatrix evaluate_matrix(const PolyMatrix& m, const Point& p);
std::size_t rank_at(const PolyMatrix& m, const Point& p);

/// Point p with p([x_j, eta_i]) = delta_ij for eta_i = (ad x_i)^{s-2} x_{i+1 mod r},
/// solved over the degree-s coordinates; all other coordinates are 0.
/// Throws PreconditionError when dim g_{s-1} < dim g_1 or the system has no solution.
Point make_generic_point(const GradedAlgebra& alg);

/// Symbolic determinant by cofactor expansion with memoised minors.
Polynomial determinant(const PolyMatrix& m);

/// Classical adjoint: adj(m) * m = m * adj(m) = det(m) * I.
PolyMatrix adjugate(const PolyMatrix& m);

/// Right kernel of a polynomial matrix over its field of fractions, cleared
/// to polynomial vectors. The rank and a nonsingular pivot block are read off
/// at `sample`, which must realise the generic rank. Each vector has the
/// pivot-block determinant at one non-pivot column and is divided by the gcd
/// of its entries.
struct GenericKernel {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<PolyVector> vectors;
};
GenericKernel generic_right_kernel(const PolyMatrix& m, const Point& sample);

/// Divides all entries by their common gcd (zero vectors are unchanged).
PolyVector remove_content(PolyVector v);

}  // namespace carnot
