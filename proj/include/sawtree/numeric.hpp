#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sawtree/errors.hpp"

namespace sawtree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

inline BigInt ipow(BigInt base, unsigned e) {
    BigInt r(1);
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

// q^e for integer e (negative allowed; q must be nonzero then).
inline Rational rpow(const Rational& q, int e) {
    if (e >= 0) {
        return Rational(ipow(boost::multiprecision::numerator(q), static_cast<unsigned>(e)),
                        ipow(boost::multiprecision::denominator(q), static_cast<unsigned>(e)));
    }
    if (q == 0) throw InvalidInput("rpow: zero base with negative exponent");
    return Rational(ipow(boost::multiprecision::denominator(q), static_cast<unsigned>(-e)),
                    ipow(boost::multiprecision::numerator(q), static_cast<unsigned>(-e)));
}

// floor(q) for q >= 0.
inline BigInt rfloor(const Rational& q) {
    return boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
}

// Parses "p/q", a plain integer, or a finite decimal ("1.3" -> 13/10).
Rational parse_rational(std::string_view text);

// Largest k >= 0 with k*k <= n.
std::uint32_t isqrt_floor(std::uint64_t n);

// Natural log of a positive integer too large for to_double.
double log_big(const BigInt& v);

}  // namespace sawtree
