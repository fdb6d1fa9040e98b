#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace effgen {

// Every quantity in this library is an exact integer or an exact rational.
// Floating point is not used anywhere; all comparisons are decidable.
// Expression templates are off so that integer expressions convert to
// rationals the way plain values do.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }  // always > 0

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

inline Int rat_floor(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

/// Renders "p/q" with the "/q" omitted for integers. Parsing accepts both.
inline std::string rat_to_string(const Rat& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) s += "/" + rat_den(r).str();
  return s;
}

inline Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational \"" + text + "\"");
  }
}

inline Int factorial(const Int& n) {
  if (n < 0) throw std::invalid_argument("factorial of negative integer");
  Int out = 1;
  for (Int i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Int lcm_range(const Int& n) {
  Int out = 1;
  for (Int i = 2; i <= n; ++i) out = lcm(out, i);
  return out;
}

}  // namespace effgen
