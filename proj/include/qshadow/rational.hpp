#ifndef QSHADOW_RATIONAL_HPP
#define QSHADOW_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <string_view>

namespace qshadow {

// Exact coefficient arithmetic is delegated to GMP. mpq_class keeps values
// canonical: lowest terms, strictly positive denominator.
using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a", "a/b" or "-a/b" (decimal, arbitrary precision). Throws
// ParseError on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "num/den" rendering, denominator always written.
std::string fraction_string(const Rational& x);

// x^n for n >= 0.
Integer pow_integer(const Integer& x, unsigned long n);

// p^e as Integer (p > 0).
Integer prime_power(long p, unsigned long e);

// p^{2m+1} as long; throws std::overflow_error if it does not fit.
long odd_prime_power_long(long p, long m);

bool fits_long(const Integer& x);

bool is_prime(long n);

}  // namespace qshadow

#endif
