#pragma once

// Exact rationals. Backed by GMP's mpq_class, which keeps every value in
// lowest terms with a positive denominator after each arithmetic operation.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fricke {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// num/den in canonical form. GMP leaves Rational(num, den) unreduced, and
/// its arithmetic and comparisons assume reduced operands.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p" or "p/q" (decimal integers, q != 0) into canonical form.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal", 0);

  auto check_digits = [&](std::size_t from, std::size_t to) {
    if (from == to) throw ParseError("expected digits in '" + s + "'", from);
    for (std::size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("invalid character in rational '" + s + "'", i);
  };

  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    check_digits(start, s.size());
    return Rational(Integer(s[0] == '+' ? s.substr(1) : s));
  }
  check_digits(start, slash);
  check_digits(slash + 1, s.size());
  Integer num(s.substr(s[0] == '+' ? 1 : 0, slash - (s[0] == '+' ? 1 : 0)));
  Integer den(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int sign(const Rational& r) { return sgn(r); }

inline std::size_t hash_value(const Rational& r) {
  std::hash<std::string> h;
  return h(r.get_str(16));
}

}  // namespace fricke
