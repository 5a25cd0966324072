#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transposed() const;
  bool is_zero() const;
  bool is_antisymmetric() const;
  bool is_symmetric() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

using RationalVector = std::vector<Rational>;

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Rank by fraction-free (Bareiss) elimination on the row-scaled integer matrix.
std::size_t rank(const RationalMatrix& m);

/// Determinant of a square matrix, Bareiss.
Rational determinant(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column of the reduced row
/// echelon form (free entry 1).
std::vector<RationalVector> right_kernel(const RationalMatrix& m);

/// Basis of {u : u^T m = 0}.
std::vector<RationalVector> left_kernel(const RationalMatrix& m);

/// Pivot columns of the reduced row echelon form, ascending.
std::vector<std::size_t> pivot_columns(const RationalMatrix& m);

/// Some solution of m x = b with free unknowns set to zero; nullopt if inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b);

/// Matrix whose rows are the given vectors (all of equal length).
RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Sylvester inertia of a symmetric matrix via exact congruence diagonalisation.
Inertia inertia(const RationalMatrix& symmetric);

}  // namespace carnot
