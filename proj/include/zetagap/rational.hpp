#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace zetagap {

// Exact rational arithmetic. GMP's mpq keeps values in lowest terms with a
// positive denominator, which is exactly the canonical form we need; every
// intermediate value in the pipeline stays exact until the final scalar
// conversion to double.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Correctly handles values far outside the long/double ranges.
double to_double(const Rational& r);

// Accepts "n", "n/d", and plain decimals like "-3.25" (converted exactly).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

// n! as an exact integer. Memoized up to the worst-case index used by the
// series (j + 3 with the series cap at 60, i.e. 2*60 + 3).
const BigInt& factorial(unsigned n);

BigInt binomial(unsigned n, unsigned k);

// Best continued-fraction approximation of x with denominator <= max_den.
Rational rationalize(double x, std::uint64_t max_den);

}  // namespace zetagap
