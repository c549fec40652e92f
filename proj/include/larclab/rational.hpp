#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace larclab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2_int(int k) {
    BigInt r = 1;
    return r << k;
}

inline Rational pow2_rat(int k) {
    if (k >= 0) return Rational(pow2_int(k));
    return Rational(1, pow2_int(-k));
}

inline Rational dyadic(long long num, int scale_pow2) {
    return Rational(num) * pow2_rat(-scale_pow2);
}

// Serialized form is always "p/q" (q = 1 for integers), lossless.
inline std::string to_fraction_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

inline Rational parse_fraction(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rational(BigInt(std::string(s)));
        BigInt p{std::string(s.substr(0, slash))};
        BigInt q{std::string(s.substr(slash + 1))};
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + std::string(s));
    }
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    return (a + b - 1) / b;
}

inline BigInt ceil_rat(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (num >= 0) return ceil_div(num, den);
    return -((-num) / den);
}

}  // namespace larclab
