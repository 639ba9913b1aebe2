#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace spinvol {

using BigInt = boost::multiprecision::cpp_int;
/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
using ExactRational = boost::multiprecision::cpp_rational;

/// Double mantissa with a separate binary exponent: value = mantissa * 2^exp.
/// Covers the dynamic range of factorial ratios at spins far beyond the
/// double exponent limit.
struct ScaledDouble {
    double mantissa = 0.0;
    std::int64_t exp = 0;

    static ScaledDouble from(double v) {
        ScaledDouble s;
        if (v == 0.0)
            return s;
        int e = 0;
        s.mantissa = std::frexp(v, &e);
        s.exp = e;
        return s;
    }

    ScaledDouble &normalize() {
        if (mantissa == 0.0) {
            exp = 0;
            return *this;
        }
        int e = 0;
        mantissa = std::frexp(mantissa, &e);
        exp += e;
        return *this;
    }

    friend ScaledDouble operator*(ScaledDouble a, ScaledDouble b) {
        ScaledDouble r{a.mantissa * b.mantissa, a.exp + b.exp};
        return r.normalize();
    }
    friend ScaledDouble operator/(ScaledDouble a, ScaledDouble b) {
        ScaledDouble r{a.mantissa / b.mantissa, a.exp - b.exp};
        return r.normalize();
    }

    ScaledDouble sqrt() const {
        ScaledDouble r = *this;
        if (r.exp % 2 != 0) {
            r.mantissa *= 2.0;
            r.exp -= 1;
        }
        r.mantissa = std::sqrt(r.mantissa);
        r.exp /= 2;
        return r.normalize();
    }

    double to_double() const {
        if (exp > 2000)
            return std::copysign(HUGE_VAL, mantissa);
        if (exp < -2000)
            return 0.0 * mantissa;
        return std::ldexp(mantissa, static_cast<int>(exp));
    }
};

inline ScaledDouble to_scaled(const BigInt &n) {
    if (n == 0)
        return {};
    BigInt m = boost::multiprecision::abs(n);
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(m)) + 1;
    std::int64_t shift = bits > 62 ? bits - 62 : 0;
    if (shift > 0)
        m >>= static_cast<unsigned>(shift);
    ScaledDouble s{static_cast<double>(m.convert_to<std::uint64_t>()), shift};
    if (n < 0)
        s.mantissa = -s.mantissa;
    return s.normalize();
}

inline ScaledDouble to_scaled(const ExactRational &q) {
    if (q == 0)
        return {};
    return to_scaled(boost::multiprecision::numerator(q)) /
           to_scaled(boost::multiprecision::denominator(q));
}

inline double to_double(const ExactRational &q) { return to_scaled(q).to_double(); }

inline std::string to_string(const ExactRational &q) {
    return q.str();
}

inline int sign(const ExactRational &q) { return q.sign(); }

} // namespace spinvol
