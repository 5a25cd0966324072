#include "carnot/rational.hpp"

#include <cctype>

#include "carnot/errors.hpp"

namespace carnot {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string body(text.substr(begin, end - begin));
  if (body.empty()) throw InputError("empty rational literal");

  std::size_t i = 0;
  if (body[i] == '-' || body[i] == '+') ++i;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; i < body.size(); ++i) {
    const char c = body[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw InputError("malformed rational literal '" + body + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) {
    throw InputError("malformed rational literal '" + body + "'");
  }
  std::string digits = body;
  if (digits.front() == '+') digits.erase(0, 1);
  Rational q;
  q.set_str(digits, 10);
  if (q.get_den() == 0) throw InputError("zero denominator in '" + body + "'");
  q.canonicalize();
  return q;
}

}  // namespace carnot
