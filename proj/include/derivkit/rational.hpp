#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "derivkit/error.hpp"

namespace derivkit {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0)
    throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q" with the sign on p and q > 0; integers as "p".
inline std::string to_string(const Rational& r) { return r.get_str(); }

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size())
    return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      return false;
  return true;
}

} // namespace detail

/// Parses a rational literal. With `strict`, the literal must already be in
/// canonical form (reduced, positive denominator, no leading zeros or '+').
inline Rational parse_rational(std::string_view text, bool strict = true) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den[0] == '-')
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0)
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  if (strict && r.get_str() != text)
    throw ParseError("non-canonical rational \"" + std::string(text) + "\"; use \"" +
                     r.get_str() + "\"");
  return r;
}

} // namespace derivkit
