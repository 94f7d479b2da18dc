#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace causalgeo {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Largest integer <= q.
inline BigInt rat_floor(const Rational& q) {
    BigInt n = numerator(q);
    BigInt d = denominator(q); // canonical form keeps d > 0
    BigInt quot = n / d;
    if (n % d != 0 && n < 0) --quot;
    return quot;
}

// Smallest integer >= q.
inline BigInt rat_ceil(const Rational& q) { return -rat_floor(Rational(-q)); }

} // namespace causalgeo
