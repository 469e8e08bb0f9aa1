#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "errors.hpp"

namespace zipshift {

// All arithmetic in this library is exact. Distances are lambda^-M with M up
// to transient+lcm search radii, so numerators/denominators need arbitrary
// precision.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt int_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

/// lambda^-m as an exact rational.
inline Rational inv_power(unsigned lambda, unsigned m) {
    return Rational(BigInt(1), int_pow(BigInt(lambda), m));
}

// Canonical text form: "num/den" in lowest terms, "num" when den == 1.
inline std::string to_frac(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

inline Rational parse_frac(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ParseError("bad rational \"" + s + "\"");
    }
}

}  // namespace zipshift
