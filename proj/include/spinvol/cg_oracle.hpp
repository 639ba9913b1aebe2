#pragma once

// Brute-force 6j oracle: contracts four Clebsch-Gordan coefficients over all
// magnetic quantum numbers. Shares no code with the Racah evaluation in
// sixj.hpp (own factorials, own CG single sum, own radical handling) so the
// two can check each other.

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "spinvol/errors.hpp"
#include "spinvol/half_int.hpp"
#include "spinvol/rational.hpp"
#include "spinvol/sixj.hpp"

namespace spinvol {

struct OracleSquare {
    int sign = 0;            ///< -1, 0, +1
    ExactRational square{0}; ///< exact value²
};

namespace oracle_detail {

inline const BigInt &factorial(std::int64_t n) {
    static thread_local std::vector<BigInt> table{BigInt(1)};
    while (static_cast<std::int64_t>(table.size()) <= n)
        table.push_back(table.back() * table.size());
    return table[static_cast<std::size_t>(n)];
}

/// q·√r with rationals q, r >= 0.
struct SurdValue {
    ExactRational q{0};
    ExactRational r{1};
};

inline std::optional<BigInt> exact_isqrt(const BigInt &n) {
    if (n < 0)
        return std::nullopt;
    BigInt s = boost::multiprecision::sqrt(n);
    if (s * s != n)
        return std::nullopt;
    return s;
}

inline std::optional<ExactRational> rational_sqrt(const ExactRational &x) {
    auto n = exact_isqrt(boost::multiprecision::numerator(x));
    auto d = exact_isqrt(boost::multiprecision::denominator(x));
    if (!n || !d)
        return std::nullopt;
    return ExactRational(*n, *d);
}

/// <j1 m1 j2 m2 | J M> from the Racah single-sum formula; all arguments as 2j.
inline SurdValue clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
    SurdValue out;
    if (tm1 + tm2 != tM)
        return out;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ)
        return out;
    if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tJ + tM) % 2)
        return out;
    if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2)
        return out;
    auto f = [](int twice) { return factorial(twice / 2); };
    ExactRational r = ExactRational(BigInt(tJ + 1)) * ExactRational(f(tJ + tj1 - tj2) * f(tJ - tj1 + tj2) * f(tj1 + tj2 - tJ), f(tj1 + tj2 + tJ + 2));
    r *= ExactRational(f(tJ + tM) * f(tJ - tM) * f(tj1 - tm1) * f(tj1 + tm1) * f(tj2 - tm2) * f(tj2 + tm2));
    ExactRational sum = 0;
    // all k for which every factorial argument is nonnegative
    for (int k = 0;; ++k) {
        const int a1 = (tj1 + tj2 - tJ) / 2 - k;
        const int a2 = (tj1 - tm1) / 2 - k;
        const int a3 = (tj2 + tm2) / 2 - k;
        const int a4 = (tJ - tj2 + tm1) / 2 + k;
        const int a5 = (tJ - tj1 - tm2) / 2 + k;
        if (a1 < 0 || a2 < 0 || a3 < 0)
            break;
        if (a4 < 0 || a5 < 0)
            continue;
        ExactRational term(BigInt(1), factorial(k) * factorial(a1) * factorial(a2) * factorial(a3) *
                                          factorial(a4) * factorial(a5));
        sum += (k % 2 == 0) ? term : ExactRational(-term);
    }
    out.q = sum;
    out.r = r;
    return out;
}

/// Wigner 3j (j1 j2 j3; m1 m2 m3) = (-1)^(j1-j2-m3) / √(2j3+1) <j1 m1 j2 m2 | j3 -m3>.
inline SurdValue three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    SurdValue cg = clebsch_gordan(tj1, tm1, tj2, tm2, tj3, -tm3);
    if (cg.q == 0)
        return cg;
    const int ph = (tj1 - tj2 - tm3) / 2;
    if (ph % 2 != 0)
        cg.q = -cg.q;
    cg.r /= ExactRational(BigInt(tj3 + 1));
    return cg;
}

} // namespace oracle_detail

/// Largest 2j the oracle accepts.
inline constexpr int kCgOracleMaxTwice = 5;

/// Sign and exact square of a 6j from
///   Σ_m (-1)^{Σ(j-m)} (j1 j2 j3; -m1 -m2 -m3)(j1 j5 j6; m1 -m5 m6)
///                     (j4 j2 j6; m4 m2 -m6)(j4 j5 j3; -m4 m5 m3).
/// Every term shares its radicand up to a rational square; the sum is
/// accumulated against the first term's radicand.
inline OracleSquare sixj_oracle_cg(const SixJ &s) {
    for (auto j : s.j)
        if (j.twice() > kCgOracleMaxTwice || j.twice() < 0)
            throw RefusalError("CG oracle limited to spins <= 5/2, got " + s.str());
    using oracle_detail::SurdValue;
    const int t1 = static_cast<int>(s.j[0].twice()), t2 = static_cast<int>(s.j[1].twice()),
              t3 = static_cast<int>(s.j[2].twice()), t4 = static_cast<int>(s.j[3].twice()),
              t5 = static_cast<int>(s.j[4].twice()), t6 = static_cast<int>(s.j[5].twice());

    std::optional<ExactRational> base_radicand;
    ExactRational total = 0;
    for (int m1 = -t1; m1 <= t1; m1 += 2)
        for (int m2 = -t2; m2 <= t2; m2 += 2)
            for (int m4 = -t4; m4 <= t4; m4 += 2) {
                const int m3 = -m1 - m2;
                const int m6 = m4 + m2;
                const int m5 = m1 + m6;
                if (std::abs(m3) > t3 || std::abs(m6) > t6 || std::abs(m5) > t5)
                    continue;
                const SurdValue f1 = oracle_detail::three_j(t1, t2, t3, -m1, -m2, -m3);
                if (f1.q == 0)
                    continue;
                const SurdValue f2 = oracle_detail::three_j(t1, t5, t6, m1, -m5, m6);
                if (f2.q == 0)
                    continue;
                const SurdValue f3 = oracle_detail::three_j(t4, t2, t6, m4, m2, -m6);
                if (f3.q == 0)
                    continue;
                const SurdValue f4 = oracle_detail::three_j(t4, t5, t3, -m4, m5, m3);
                if (f4.q == 0)
                    continue;
                const int twice_phase = (t1 - m1) + (t2 - m2) + (t3 - m3) + (t4 - m4) + (t5 - m5) + (t6 - m6);
                ExactRational q = f1.q * f2.q * f3.q * f4.q;
                if ((twice_phase / 2) % 2 != 0)
                    q = -q;
                const ExactRational r = f1.r * f2.r * f3.r * f4.r;
                if (!base_radicand) {
                    base_radicand = r;
                    total += q;
                    continue;
                }
                auto ratio = oracle_detail::rational_sqrt(r / *base_radicand);
                if (!ratio)
                    throw std::logic_error("CG oracle: incommensurate radicands in " + s.str());
                total += q * *ratio;
            }
    OracleSquare out;
    if (!base_radicand || total == 0)
        return out;
    out.sign = total.sign();
    out.square = total * total * *base_radicand;
    return out;
}

} // namespace spinvol
