#ifndef EFBOUND_RATIONAL_HPP
#define EFBOUND_RATIONAL_HPP

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace efbound {

// Arbitrary-precision rational; GMP keeps every result in lowest terms with a
// positive denominator as long as values are produced by arithmetic or by
// parse_rational().
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

// Accepts "p", "p/q", and "-p/q" (optional leading sign, decimal digits only).
// Throws InputError on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "p/q", or "p" when q = 1.
std::string to_string(const Rational& value);

// True iff gcd(|num|, den) = 1 and den > 0.
bool is_canonical(const Rational& value);

Rational dot(std::span<const Rational> lhs, std::span<const Rational> rhs);

// Lowest common multiple of all denominators (1 for an empty range).
Integer denominator_lcm(std::span<const Rational> values);

// Best rational approximation with denominator at most max_denominator
// (continued-fraction convergents and semiconvergents).
Rational approximate(double value, long max_denominator);

}  // namespace efbound

#endif  // EFBOUND_RATIONAL_HPP
