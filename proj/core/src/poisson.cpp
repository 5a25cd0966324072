#include "carnot/poisson.hpp"

#include <bit>
#include <unordered_map>

#include "carnot/errors.hpp"

namespace carnot {

namespace {
Polynomial zero_of(const GradedAlgebra& alg) { return Polynomial::monomial(alg, Monomial(), 0); }
}  // namespace

PolyMatrix::PolyMatrix(GradedAlgebra alg, std::size_t rows, std::size_t cols)
    : alg_(std::move(alg)), rows_(rows), cols_(cols), data_(rows * cols, zero_of(alg_)) {}

PolyMatrix::PolyMatrix(GradedAlgebra alg, std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : PolyMatrix(std::move(alg), row_labels.size(), col_labels.size()) {
  row_labels_ = std::move(row_labels);
  col_labels_ = std::move(col_labels);
}

PolyVector PolyMatrix::row(std::size_t i) const {
  return PolyVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(alg_, cols_, rows_);
  t.row_labels_ = col_labels_;
  t.col_labels_ = row_labels_;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMatrix s(alg_, rows.size(), cols.size());
  if (!row_labels_.empty())
    for (std::size_t i : rows) s.row_labels_.push_back(row_labels_.at(i));
  if (!col_labels_.empty())
    for (std::size_t j : cols) s.col_labels_.push_back(col_labels_.at(j));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
  return s;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
  return true;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) - (*this)(j, i)).is_zero()) return false;
  return true;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix c(a.algebra().valid() ? a.algebra() : b.algebra(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

PolyVector operator*(const PolyMatrix& a, const PolyVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix shape mismatch");
  PolyVector out(a.rows(), zero_of(a.algebra()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

PolyMatrix bivector(const GradedAlgebra& alg) {
  const std::size_t n = alg.dimension();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(alg.name(i));
  PolyMatrix m(alg, labels, labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Polynomial::linear(alg, alg.bracket_basis(i, j));
  return m;
}

PolyMatrix block(const GradedAlgebra& alg, int row_degree, int col_degree) {
  if (row_degree < 1 || col_degree < 1 || row_degree > alg.step() || col_degree > alg.step())
    throw InputError("block degree outside 1.." + std::to_string(alg.step()));
  const auto [r0, r1] = alg.degree_range(row_degree);
  const auto [c0, c1] = alg.degree_range(col_degree);
  std::vector<std::string> rl, cl;
  for (std::size_t i = r0; i < r1; ++i) rl.push_back(alg.name(i));
  for (std::size_t j = c0; j < c1; ++j) cl.push_back(alg.name(j));
  PolyMatrix m(alg, rl, cl);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = Polynomial::linear(alg, alg.bracket_basis(i, j));
  return m;
}

PolyMatrix bracket_matrix(const GradedAlgebra& alg, const std::vector<LieElement>& rows, const std::vector<LieElement>& cols) {
  PolyMatrix m(alg, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = Polynomial::linear(alg, alg.bracket(rows[i], cols[j]));
  return m;
}

RationalMatrix evaluate_matrix(const PolyMatrix& m, const Point& p) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), p);
  return out;
}

std::size_t rank_at(const PolyMatrix& m, const Point& p) { return rank(evaluate_matrix(m, p)); }

Point make_generic_point(const GradedAlgebra& alg) {
  const int r = alg.rank();
  const int s = alg.step();
  if (alg.degree_size(s - 1) < static_cast<std::size_t>(r))
    throw PreconditionError("generic point requires dim g_{s-1} >= dim g_1 (dim g_" + std::to_string(s - 1) + " = " +
                            std::to_string(alg.degree_size(s - 1)) + " < " + std::to_string(r) + ")");
  std::vector<LieElement> eta;
  for (int i = 1; i <= r; ++i) {
    const LieElement xi = LieElement::basis(alg.generator(i));
    LieElement e = LieElement::basis(alg.generator(i % r + 1));
    for (int k = 0; k < s - 2; ++k) e = alg.bracket(xi, e);
    eta.push_back(std::move(e));
  }
  const auto [t0, t1] = alg.degree_range(s);
  RationalMatrix a(static_cast<std::size_t>(r * r), t1 - t0);
  RationalVector rhs(static_cast<std::size_t>(r * r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const std::size_t row = static_cast<std::size_t>(i * r + j);
      const LieElement v = alg.bracket(LieElement::basis(alg.generator(j + 1)), eta[static_cast<std::size_t>(i)]);
      for (const auto& [k, c] : v.terms()) a(row, k - t0) = c;
      rhs[row] = i == j ? 1 : 0;
    }
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("no point realises the unit pairing on (ad x_i)^{s-2} x_{i+1}");
  Point p(alg);
  for (std::size_t k = t0; k < t1; ++k) p[k] = (*sol)[k - t0];
  return p;
}

namespace {

class DeterminantExpander {
 public:
  explicit DeterminantExpander(const PolyMatrix& m) : m_(m) {}

  // Determinant of rows [n - popcount(mask), n) over the columns in `mask`.
  Polynomial minor(std::uint64_t mask) {
    const std::size_t k = static_cast<std::size_t>(std::popcount(mask));
    if (k == 0) return Polynomial::monomial(m_.algebra(), Monomial(), 1);
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    const std::size_t row = m_.rows() - k;
    Polynomial sum = zero_of(m_.algebra());
    int sign = 1;
    for (std::size_t c = 0; c < m_.cols(); ++c) {
      if (!(mask & (std::uint64_t{1} << c))) continue;
      if (!m_(row, c).is_zero()) {
        Polynomial term = m_(row, c) * minor(mask & ~(std::uint64_t{1} << c));
        if (sign > 0) sum += term;
        else sum -= term;
      }
      sign = -sign;
    }
    memo_.emplace(mask, sum);
    return sum;
  }

 private:
  const PolyMatrix& m_;
  std::unordered_map<std::uint64_t, Polynomial> memo_;
};

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() > 62) throw UnsupportedError("symbolic determinant too large");
  DeterminantExpander e(m);
  return e.minor(m.rows() == 0 ? 0 : (std::uint64_t{1} << m.rows()) - 1);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  PolyMatrix adj(m.algebra(), n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = Polynomial::monomial(m.algebra(), Monomial(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Polynomial d = determinant(m.submatrix(rows, cols));
      adj(i, j) = (i + j) % 2 == 0 ? d : -d;
    }
  return adj;
}

}  // namespace carnot

namespace carnot {

PolyVector remove_content(PolyVector v) {
  Polynomial g = Polynomial(0);
  for (const auto& e : v) g = gcd(g, e);
  if (g.is_zero()) return v;
  for (auto& e : v) e = exact_quotient(e, g);
  return v;
}

GenericKernel generic_right_kernel(const PolyMatrix& m, const Point& sample) {
  GenericKernel k;
  const RationalMatrix at = evaluate_matrix(m, sample);
  k.pivot_rows = pivot_columns(at.transposed());
  k.rank = k.pivot_rows.size();
  RationalMatrix rows_at(k.rank, m.cols());
  for (std::size_t i = 0; i < k.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows_at(i, j) = at(k.pivot_rows[i], j);
  k.pivot_cols = pivot_columns(rows_at);

  const PolyMatrix a = m.submatrix(k.pivot_rows, k.pivot_cols);
  const Polynomial det = determinant(a);
  const PolyMatrix adj = adjugate(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : k.pivot_cols) is_pivot[c] = true;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    PolyVector rhs(k.rank);
    for (std::size_t i = 0; i < k.rank; ++i) rhs[i] = m(k.pivot_rows[i], c);
    const PolyVector sol = adj * rhs;
    PolyVector v(m.cols(), zero_of(m.algebra()));
    v[c] = det;
    for (std::size_t i = 0; i < k.rank; ++i) v[k.pivot_cols[i]] = -sol[i];
    k.vectors.push_back(remove_content(std::move(v)));
  }
  return k;
}

}  // namespace carnot
