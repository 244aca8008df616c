#pragma once

#include <gmpxx.h>

#include <string>

namespace ndtopt {

// All cache sizes, splitting ratios and delivery-time values are exact
// rationals. mpq_class keeps every comparison in the library an equality
// test instead of a tolerance test.
using Rat = mpq_class;

// mpq_class's two-argument constructor does not reduce the fraction, and
// GMP arithmetic requires canonical operands; route every num/den
// construction through here.
inline Rat frac(const mpz_class& num, const mpz_class& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}
inline Rat frac(long num, long den) { return frac(mpz_class(num), mpz_class(den)); }

// Parses "p/q", plain integers, and decimal strings ("0.25" becomes 1/4
// exactly). Throws std::invalid_argument on anything else.
Rat parse_rational(const std::string& text);

// Canonical "p/q" rendering; integers print without the denominator.
std::string to_string(const Rat& value);

// Decimal rendering with 12 significant digits, for CSV columns.
std::string to_decimal_string(const Rat& value);

inline double to_double(const Rat& value) { return value.get_d(); }

}  // namespace ndtopt
