#include "carnot/exact_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace carnot {

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool RationalMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

namespace {

using IntegerGrid = std::vector<std::vector<Integer>>;

// Each row multiplied by the lcm of its denominators; rank and determinant
// sign/zero-ness are unaffected, determinant is rescaled by the returned factor.
IntegerGrid to_integer_rows(const RationalMatrix& m, Rational* scale) {
  IntegerGrid g(m.rows(), std::vector<Integer>(m.cols()));
  Rational total = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    total *= Rational(l);
  }
  if (scale != nullptr) *scale = total;
  return g;
}

// Bareiss elimination in place; returns rank. `sign` tracks row swaps.
std::size_t bareiss(IntegerGrid& a, std::size_t cols, int* sign) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t r = 0;
  int s = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      s = -s;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  if (sign != nullptr) *sign = s;
  return r;
}

struct Rref {
  RationalMatrix m;
  std::vector<std::size_t> pivot_cols;
};

Rref reduced_row_echelon(RationalMatrix m) {
  Rref out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.m = std::move(m);
  return out;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  IntegerGrid g = to_integer_rows(m, nullptr);
  return bareiss(g, m.cols(), nullptr);
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Rational scale;
  IntegerGrid g = to_integer_rows(m, &scale);
  int sign = 1;
  if (bareiss(g, m.cols(), &sign) < m.rows()) return 0;
  Rational d(g.back().back());
  d *= sign;
  return d / scale;
}

std::vector<RationalVector> right_kernel(const RationalMatrix& m) {
  const Rref rref = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : rref.pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < rref.pivot_cols.size(); ++i) v[rref.pivot_cols[i]] = -rref.m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RationalVector> left_kernel(const RationalMatrix& m) { return right_kernel(m.transposed()); }

std::vector<std::size_t> pivot_columns(const RationalMatrix& m) { return reduced_row_echelon(m).pivot_cols; }

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Rref rref = reduced_row_echelon(aug);
  if (!rref.pivot_cols.empty() && rref.pivot_cols.back() == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t i = 0; i < rref.pivot_cols.size(); ++i) x[rref.pivot_cols[i]] = rref.m(i, m.cols());
  return x;
}

RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Inertia inertia(const RationalMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw std::invalid_argument("inertia of a non-symmetric matrix");
  RationalMatrix a = symmetric;
  const std::size_t n = a.rows();
  Inertia out;
  std::size_t done = 0;
  // Congruence transforms A -> E A E^T keep inertia; eliminate one index per round.
  std::vector<bool> active(n, true);
  while (done < n) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && sgn(a(i, i)) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // No usable diagonal: either the active block is zero, or add row/col j to i.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (active[i] && active[j] && sgn(a(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        out.zero += n - done;
        break;
      }
      for (std::size_t k = 0; k < n; ++k) a(pi, k) += a(pj, k);
      for (std::size_t k = 0; k < n; ++k) a(k, pi) += a(k, pj);
      p = pi;
    }
    const Rational piv = a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == p || sgn(a(i, p)) == 0) continue;
      const Rational f = a(i, p) / piv;
      for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(p, k);
      for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, p);
    }
    if (sgn(piv) > 0) ++out.positive; else ++out.negative;
    active[p] = false;
    ++done;
  }
  return out;
}

}  // namespace carnot
