#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace carnot {

/// Arbitrary-precision rational, always kept canonical by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b" (optional surrounding whitespace). Throws InputError.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace carnot
