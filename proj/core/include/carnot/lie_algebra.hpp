#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Iterated left bracket [x_{l0}, [x_{l1}, ... [x_{l(m-2)}, x_{l(m-1)}]]] written by
/// its letters (generator indices, 1-based). A single letter is a generator.
/// Structure is the pair (left generator, right word) for degree >= 2.
class HallWord {
 public:
  HallWord() = default;
  explicit HallWord(std::vector<int> letters) : letters_(std::move(letters)) {}

  int degree() const noexcept { return static_cast<int>(letters_.size()); }
  bool is_generator() const noexcept { return letters_.size() == 1; }
  const std::vector<int>& letters() const noexcept { return letters_; }

  /// Generator index for degree 1, otherwise the left factor's index.
  int left() const { return letters_.front(); }
  HallWord right() const;

  /// Subscript string: "x1", "x12", "x112", "x1212".
  std::string name() const;

  friend auto operator<=>(const HallWord&, const HallWord&) = default;

 private:
  std::vector<int> letters_;
};

/// Sparse rational combination of basis elements (keys are basis indices).
class LieElement {
 public:
  using Terms = std::map<std::size_t, Rational>;

  LieElement() = default;
  static LieElement basis(std::size_t index, Rational coeff = 1);

  bool is_zero() const noexcept { return terms_.empty(); }
  const Terms& terms() const noexcept { return terms_; }
  Rational coefficient(std::size_t index) const;

  void add(std::size_t index, const Rational& coeff);
  LieElement& operator+=(const LieElement& other);
  LieElement& operator-=(const LieElement& other);
  LieElement& operator*=(const Rational& c);

  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  friend LieElement operator-(LieElement a) { return a *= Rational(-1); }
  friend bool operator==(const LieElement&, const LieElement&) = default;

 private:
  Terms terms_;
};

std::uint64_t graded_dimension(int rank, int degree);

namespace detail {
struct AlgebraData;
}

/// Free nilpotent Lie algebra of a given rank and step with a graded Hall
/// basis and a precomputed bracket table. Cheap to copy; immutable.
///
/// Basis conventions:
///   degree 2: x_jk = [x_j, x_k], j < k
///   degree 3: x_abc = [x_a, x_bc], b < c, a <= c
///   degree 4: x_a(bcd) = [x_a, x_bcd], greedy Hall completion over
///             (a, bcd) in lexicographic order
/// Within a degree, basis words are ordered lexicographically by letters.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;

  bool valid() const noexcept { return data_ != nullptr; }
  int rank() const;
  int step() const;
  std::size_t dimension() const;

  const std::vector<HallWord>& basis() const;
  const HallWord& word(std::size_t index) const;
  int degree_of(std::size_t index) const;
  const std::string& name(std::size_t index) const;

  /// Half-open basis index range [first, last) of degree m (empty when m > step).
  std::pair<std::size_t, std::size_t> degree_range(int m) const;
  std::size_t degree_size(int m) const;

  /// Basis index of generator x_i (1-based i).
  std::size_t generator(int i) const;

  std::optional<std::size_t> find(const HallWord& w) const;
  std::optional<std::size_t> find(std::string_view name) const;

  /// Normal form of [e_i, e_j] for basis indices.
  const LieElement& bracket_basis(std::size_t i, std::size_t j) const;
  LieElement bracket(const LieElement& a, const LieElement& b) const;

  /// Normal form of the iterated left bracket named by `indices`
  /// (x_{i1 ... j k} = [x_i1, [..., [x_j, x_k]]]).
  LieElement bracket_symbol(std::span<const int> indices) const;

  /// Resolves a name such as "x312" via bracket_symbol. nullopt if malformed
  /// or out of range.
  std::optional<LieElement> resolve_symbol(std::string_view name) const;

  /// Whether `w` belongs to this algebra's basis convention.
  bool is_admissible(const HallWord& w) const;

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) noexcept { return a.data_ == b.data_; }

 private:
  friend GradedAlgebra build_algebra(int rank, int step);
  std::shared_ptr<const detail::AlgebraData> data_;
};

/// Builds the algebra; rank in 2..9 (names use single digits), step in 2..4.
GradedAlgebra build_algebra(int rank, int step);

/// Basis-convention admissibility for a word over `rank` generators. For
/// degree 4 this is the greedy Hall completion, decided by linear
/// independence in the tensor algebra.
bool hall_admissible(const HallWord& w, int rank);

}  // namespace carnot
