#include "carnot/lie_algebra.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "carnot/errors.hpp"

namespace carnot {

// ---------------------------------------------------------------------------
// HallWord / LieElement

HallWord HallWord::right() const {
  if (letters_.size() < 2) throw std::logic_error("generator has no right factor");
  return HallWord(std::vector<int>(letters_.begin() + 1, letters_.end()));
}

std::string HallWord::name() const {
  std::string s = "x";
  for (int l : letters_) s += std::to_string(l);
  return s;
}

LieElement LieElement::basis(std::size_t index, Rational coeff) {
  LieElement e;
  e.add(index, coeff);
  return e;
}

Rational LieElement::coefficient(std::size_t index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LieElement::add(std::size_t index, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.try_emplace(index, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& other) {
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

// ---------------------------------------------------------------------------
// Graded dimensions

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

std::uint64_t graded_dimension(int rank, int degree) {
  if (degree < 1) throw InputError("graded_dimension: degree must be >= 1");
  if (rank < 1) throw InputError("graded_dimension: rank must be >= 1");
  Integer sum = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d != 0) continue;
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(rank), static_cast<unsigned long>(degree / d));
    sum += moebius(d) * power;
  }
  return Integer(sum / degree).get_ui();
}

// ---------------------------------------------------------------------------
// Tensor-algebra realisation of free Lie elements

namespace {

// Noncommutative polynomial; a word is a string of letter bytes.
using Tensor = std::map<std::string, Rational>;

void tensor_add(Tensor& t, const std::string& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = t.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) t.erase(it);
  }
}

Tensor commutator(const Tensor& a, const Tensor& b) {
  Tensor out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      const Rational c = ca * cb;
      tensor_add(out, wa + wb, c);
      tensor_add(out, wb + wa, -c);
    }
  return out;
}

Tensor expand(const HallWord& w) {
  const auto& l = w.letters();
  Tensor t{{std::string(1, static_cast<char>(l.back())), Rational(1)}};
  for (std::size_t i = l.size() - 1; i-- > 0;) {
    const Tensor g{{std::string(1, static_cast<char>(l[i])), Rational(1)}};
    t = commutator(g, t);
  }
  return t;
}

// Leading-word echelon form over a fixed set of basis elements of one degree.
// Each row is a combination of basis elements (`combo`) whose expansion is `vec`,
// and whose lexicographically largest word (`pivot`) is unique across rows.
class Echelon {
 public:
  explicit Echelon(std::size_t capacity) : capacity_(capacity) {}

  // Adds basis element number `size()` with expansion `t`; false if dependent.
  bool try_add(Tensor t) {
    std::vector<Rational> combo(capacity_);
    combo[count_] = 1;
    top_reduce(t, combo);
    if (t.empty()) return false;
    const std::string pivot = t.rbegin()->first;
    pivot_index_.emplace(pivot, rows_.size());
    rows_.push_back({std::move(t), std::move(combo)});
    ++count_;
    return true;
  }

  // Coordinates of `t` in the basis; throws if `t` is not in the span.
  std::vector<Rational> express(Tensor t) const {
    std::vector<Rational> combo(capacity_);
    top_reduce(t, combo);
    if (!t.empty()) throw std::logic_error("tensor element outside the Lie span");
    for (auto& c : combo) c = -c;
    return combo;
  }

  std::size_t size() const noexcept { return count_; }

 private:
  struct Row {
    Tensor vec;
    std::vector<Rational> combo;
  };

  // t -= sum c_i row_i until the leading word is not a pivot; combo -= sum c_i combo_i.
  void top_reduce(Tensor& t, std::vector<Rational>& combo) const {
    while (!t.empty()) {
      const auto& [lead, coeff] = *t.rbegin();
      auto it = pivot_index_.find(lead);
      if (it == pivot_index_.end()) return;
      const Row& row = rows_[it->second];
      const Rational f = coeff / row.vec.rbegin()->second;
      for (const auto& [w, c] : row.vec) tensor_add(t, w, -f * c);
      for (std::size_t k = 0; k < capacity_; ++k)
        if (sgn(row.combo[k]) != 0) combo[k] -= f * row.combo[k];
    }
  }

  std::size_t capacity_;
  std::size_t count_ = 0;
  std::vector<Row> rows_;
  std::unordered_map<std::string, std::size_t> pivot_index_;
};

std::vector<HallWord> degree_one(int r) {
  std::vector<HallWord> out;
  for (int i = 1; i <= r; ++i) out.emplace_back(std::vector<int>{i});
  return out;
}

std::vector<HallWord> degree_two(int r) {
  std::vector<HallWord> out;
  for (int j = 1; j <= r; ++j)
    for (int k = j + 1; k <= r; ++k) out.emplace_back(std::vector<int>{j, k});
  return out;
}

std::vector<HallWord> degree_three(int r) {
  std::vector<HallWord> out;
  for (int a = 1; a <= r; ++a)
    for (int b = 1; b <= r; ++b)
      for (int c = b + 1; c <= r; ++c)
        if (a <= c) out.emplace_back(std::vector<int>{a, b, c});
  return out;
}

// Greedy completion: candidates [x_a, w3] with a outer, w3 in basis order.
std::vector<HallWord> degree_four(int r, const std::vector<HallWord>& three) {
  std::vector<HallWord> out;
  Echelon ech(static_cast<std::size_t>(graded_dimension(r, 4)));
  for (int a = 1; a <= r; ++a)
    for (const auto& w : three) {
      std::vector<int> letters{a};
      letters.insert(letters.end(), w.letters().begin(), w.letters().end());
      HallWord cand(std::move(letters));
      if (ech.try_add(expand(cand))) out.push_back(std::move(cand));
    }
  return out;
}

bool structurally_admissible(const HallWord& w, int r) {
  const auto& l = w.letters();
  if (l.empty()) return false;
  for (int x : l)
    if (x < 1 || x > r) return false;
  switch (l.size()) {
    case 1: return true;
    case 2: return l[0] < l[1];
    case 3: return l[1] < l[2] && l[0] <= l[2];
    default: return false;
  }
}

}  // namespace

bool hall_admissible(const HallWord& w, int rank) {
  if (w.degree() <= 3) return structurally_admissible(w, rank);
  if (w.degree() != 4) return false;
  if (!structurally_admissible(w.right(), rank) || w.left() < 1 || w.left() > rank) return false;
  const auto four = degree_four(rank, degree_three(rank));
  return std::binary_search(four.begin(), four.end(), w);
}

// ---------------------------------------------------------------------------
// GradedAlgebra

namespace detail {
struct AlgebraData {
  int rank = 0;
  int step = 0;
  std::vector<HallWord> basis;
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::size_t> offsets;  // offsets[m-1] = first index of degree m; size step+1
  std::unordered_map<std::string, std::size_t> by_name;
  std::vector<LieElement> table;  // dense n x n
};
}  // namespace detail

namespace {
const detail::AlgebraData& require(const std::shared_ptr<const detail::AlgebraData>& d) {
  if (!d) throw std::logic_error("use of an empty GradedAlgebra");
  return *d;
}
}  // namespace

GradedAlgebra build_algebra(int rank, int step) {
  if (rank < 2 || rank > 9) throw InputError("rank must be in 2..9, got " + std::to_string(rank));
  if (step < 2 || step > 4) throw UnsupportedError("step must be in 2..4, got " + std::to_string(step));

  auto data = std::make_shared<detail::AlgebraData>();
  data->rank = rank;
  data->step = step;

  std::vector<std::vector<HallWord>> by_degree;
  by_degree.push_back(degree_one(rank));
  by_degree.push_back(degree_two(rank));
  if (step >= 3) by_degree.push_back(degree_three(rank));
  if (step >= 4) by_degree.push_back(degree_four(rank, by_degree[2]));

  std::vector<Echelon> echelons;
  std::vector<Tensor> expansions;
  data->offsets.push_back(0);
  for (int m = 1; m <= step; ++m) {
    const auto& words = by_degree[m - 1];
    if (words.size() != graded_dimension(rank, m)) throw std::logic_error("basis size mismatch in degree " + std::to_string(m));
    Echelon ech(words.size());
    for (const auto& w : words) {
      Tensor t = expand(w);
      if (!ech.try_add(t)) throw std::logic_error("dependent basis word " + w.name());
      expansions.push_back(std::move(t));
      data->by_name.emplace(w.name(), data->basis.size());
      data->names.push_back(w.name());
      data->degrees.push_back(m);
      data->basis.push_back(w);
    }
    echelons.push_back(std::move(ech));
    data->offsets.push_back(data->basis.size());
  }

  const std::size_t n = data->basis.size();
  data->table.assign(n * n, LieElement{});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int m = data->degrees[i] + data->degrees[j];
      if (m > step) continue;
      const auto coords = echelons[m - 1].express(commutator(expansions[i], expansions[j]));
      LieElement e;
      for (std::size_t k = 0; k < coords.size(); ++k) e.add(data->offsets[m - 1] + k, coords[k]);
      data->table[i * n + j] = e;
      data->table[j * n + i] = -e;
    }

  GradedAlgebra alg;
  alg.data_ = std::move(data);
  return alg;
}

int GradedAlgebra::rank() const { return require(data_).rank; }
int GradedAlgebra::step() const { return require(data_).step; }
std::size_t GradedAlgebra::dimension() const { return require(data_).basis.size(); }
const std::vector<HallWord>& GradedAlgebra::basis() const { return require(data_).basis; }

const HallWord& GradedAlgebra::word(std::size_t index) const {
  const auto& d = require(data_);
  if (index >= d.basis.size()) throw InputError("basis index out of range");
  return d.basis[index];
}

int GradedAlgebra::degree_of(std::size_t index) const {
  const auto& d = require(data_);
  if (index >= d.degrees.size()) throw InputError("basis index out of range");
  return d.degrees[index];
}

const std::string& GradedAlgebra::name(std::size_t index) const {
  const auto& d = require(data_);
  if (index >= d.names.size()) throw InputError("basis index out of range");
  return d.names[index];
}

std::pair<std::size_t, std::size_t> GradedAlgebra::degree_range(int m) const {
  const auto& d = require(data_);
  if (m < 1 || m > d.step) return {d.basis.size(), d.basis.size()};
  return {d.offsets[m - 1], d.offsets[m]};
}

std::size_t GradedAlgebra::degree_size(int m) const {
  auto [a, b] = degree_range(m);
  return b - a;
}

std::size_t GradedAlgebra::generator(int i) const {
  const auto& d = require(data_);
  if (i < 1 || i > d.rank) throw InputError("generator index out of range: " + std::to_string(i));
  return static_cast<std::size_t>(i - 1);
}

std::optional<std::size_t> GradedAlgebra::find(const HallWord& w) const { return find(w.name()); }

std::optional<std::size_t> GradedAlgebra::find(std::string_view name) const {
  const auto& d = require(data_);
  auto it = d.by_name.find(std::string(name));
  if (it == d.by_name.end()) return std::nullopt;
  return it->second;
}

const LieElement& GradedAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  const auto& d = require(data_);
  const std::size_t n = d.basis.size();
  if (i >= n || j >= n) throw InputError("basis index out of range");
  return d.table[i * n + j];
}

LieElement GradedAlgebra::bracket(const LieElement& a, const LieElement& b) const {
  const auto& d = require(data_);
  const std::size_t n = d.basis.size();
  LieElement out;
  for (const auto& [i, ci] : a.terms()) {
    if (i >= n) throw InputError("unknown basis index in bracket operand");
    for (const auto& [j, cj] : b.terms()) {
      if (j >= n) throw InputError("unknown basis index in bracket operand");
      const LieElement& e = d.table[i * n + j];
      if (e.is_zero()) continue;
      const Rational f = ci * cj;
      for (const auto& [k, ck] : e.terms()) out.add(k, f * ck);
    }
  }
  return out;
}

LieElement GradedAlgebra::bracket_symbol(std::span<const int> indices) const {
  const auto& d = require(data_);
  if (indices.empty()) throw InputError("empty symbol");
  if (static_cast<int>(indices.size()) > d.step)
    throw InputError("symbol length " + std::to_string(indices.size()) + " exceeds step " + std::to_string(d.step));
  for (int i : indices)
    if (i < 1 || i > d.rank) throw InputError("symbol index " + std::to_string(i) + " outside 1.." + std::to_string(d.rank));
  LieElement e = LieElement::basis(generator(indices.back()));
  for (std::size_t k = indices.size() - 1; k-- > 0;) e = bracket(LieElement::basis(generator(indices[k])), e);
  return e;
}

std::optional<LieElement> GradedAlgebra::resolve_symbol(std::string_view name) const {
  const auto& d = require(data_);
  if (name.size() < 2 || name.front() != 'x') return std::nullopt;
  if (auto idx = find(name)) return LieElement::basis(*idx);
  std::vector<int> letters;
  for (char c : name.substr(1)) {
    if (c < '1' || c > '9') return std::nullopt;
    letters.push_back(c - '0');
  }
  if (static_cast<int>(letters.size()) > d.step) return std::nullopt;
  for (int l : letters)
    if (l > d.rank) return std::nullopt;
  return bracket_symbol(letters);
}

bool GradedAlgebra::is_admissible(const HallWord& w) const {
  const auto& d = require(data_);
  if (w.degree() < 1 || w.degree() > d.step) return false;
  if (w.degree() <= 3) return structurally_admissible(w, d.rank);
  return d.by_name.contains(w.name());
}

}  // namespace carnot
