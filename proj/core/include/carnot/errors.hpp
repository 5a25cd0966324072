#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace carnot {

/// Malformed or out-of-domain input (unknown symbol, wrong algebra, bad file).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (rank, step) combination or operation outside the supported range.
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an algorithm does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Stratum data that cannot be used: inconsistent constraints, or a
/// reduction step whose multiplier vanishes at the witness point.
class StratumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not conform to the polynomial grammar.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace carnot
