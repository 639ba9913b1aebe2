#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "spinvol/factorial_product.hpp"
#include "spinvol/half_int.hpp"
#include "spinvol/radical_value.hpp"
#include "spinvol/triad.hpp"

namespace spinvol {

/// A 6j symbol {j1 j2 j3; j4 j5 j6}, entries stored row-major.
struct SixJ {
    std::array<HalfInt, 6> j{};

    SixJ() = default;
    SixJ(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6)
        : j{j1, j2, j3, j4, j5, j6} {}

    static SixJ from_twice(int t1, int t2, int t3, int t4, int t5, int t6) {
        return {HalfInt::from_twice(t1), HalfInt::from_twice(t2), HalfInt::from_twice(t3),
                HalfInt::from_twice(t4), HalfInt::from_twice(t5), HalfInt::from_twice(t6)};
    }

    /// (j1,j2,j3), (j1,j5,j6), (j4,j2,j6), (j4,j5,j3)
    std::array<Triad, 4> triads() const {
        return {Triad{j[0], j[1], j[2]}, Triad{j[0], j[4], j[5]}, Triad{j[3], j[1], j[5]},
                Triad{j[3], j[4], j[2]}};
    }

    /// True when some triad is broken, so the symbol vanishes identically.
    bool trivial_zero() const {
        for (const auto &t : triads())
            if (!t.ok())
                return true;
        return false;
    }

    std::string str() const {
        return "{" + j[0].str() + " " + j[1].str() + " " + j[2].str() + "; " + j[3].str() + " " +
               j[4].str() + " " + j[5].str() + "}";
    }

    friend bool operator==(const SixJ &, const SixJ &) = default;
};

struct SixJValue {
    RadicalValue exact;
    double float_hint = 0.0;
};

namespace detail {

/// Racah single-sum bounds: t runs over [max triad sum, min quad sum].
struct RacahBounds {
    std::array<std::int64_t, 4> alpha{};
    std::array<std::int64_t, 3> beta{};
    std::int64_t tmin = 0;
    std::int64_t tmax = -1;
};

inline RacahBounds racah_bounds(const SixJ &s) {
    const auto &j = s.j;
    RacahBounds b;
    b.alpha = {(j[0] + j[1] + j[2]).as_int(), (j[0] + j[4] + j[5]).as_int(),
               (j[3] + j[1] + j[5]).as_int(), (j[3] + j[4] + j[2]).as_int()};
    b.beta = {(j[0] + j[1] + j[3] + j[4]).as_int(), (j[1] + j[2] + j[4] + j[5]).as_int(),
              (j[2] + j[0] + j[5] + j[3]).as_int()};
    b.tmin = *std::max_element(b.alpha.begin(), b.alpha.end());
    b.tmax = *std::min_element(b.beta.begin(), b.beta.end());
    return b;
}

} // namespace detail

/// Exact 6j by the Racah single sum; the result carries the four triads as
/// radicals (folded where they repeat). Broken triads give exact zero.
inline SixJValue sixj_exact(const SixJ &s) {
    if (s.trivial_zero())
        return {};
    const auto b = detail::racah_bounds(s);

    std::vector<FactorialProduct> terms;
    terms.reserve(static_cast<std::size_t>(b.tmax - b.tmin + 1));
    for (std::int64_t t = b.tmin; t <= b.tmax; ++t) {
        FactorialProduct f = FactorialProduct::factorial(static_cast<std::uint64_t>(t + 1));
        for (auto a : b.alpha)
            f.div_factorial(static_cast<std::uint64_t>(t - a));
        for (auto be : b.beta)
            f.div_factorial(static_cast<std::uint64_t>(be - t));
        terms.push_back(std::move(f));
    }
    FactorialProduct common = terms.front();
    for (const auto &f : terms)
        common = FactorialProduct::elementwise_min(common, f);

    BigInt sum = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        BigInt term = (terms[k] / common).numerator();
        if ((b.tmin + static_cast<std::int64_t>(k)) % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    const auto tr = s.triads();
    SixJValue v;
    v.exact = RadicalValue(common.to_rational() * ExactRational(sum),
                           std::vector<Triad>(tr.begin(), tr.end()));
    v.float_hint = v.exact.to_double();
    return v;
}

/// Plain floating evaluation of the Racah sum with exponent-tracked prefactors.
/// Accurate for moderate spins; the alternating sum loses digits to
/// cancellation as spins grow, where sixj_exact or the recurrence sweep apply.
inline double sixj_float(const SixJ &s) {
    if (s.trivial_zero())
        return 0.0;
    const auto b = detail::racah_bounds(s);
    FactorialProduct first = FactorialProduct::factorial(static_cast<std::uint64_t>(b.tmin + 1));
    for (auto a : b.alpha)
        first.div_factorial(static_cast<std::uint64_t>(b.tmin - a));
    for (auto be : b.beta)
        first.div_factorial(static_cast<std::uint64_t>(be - b.tmin));
    FactorialProduct delta2;
    for (const auto &t : s.triads())
        delta2 *= triangle_coeff_sq_factored(t);

    long double sum = 0.0L;
    long double term = 1.0L;
    for (std::int64_t t = b.tmin; t <= b.tmax; ++t) {
        sum += term;
        // ratio term(t+1)/term(t)
        long double num = -static_cast<long double>(t + 2);
        long double den = 1.0L;
        for (auto be : b.beta)
            num *= static_cast<long double>(be - t);
        for (auto a : b.alpha)
            den *= static_cast<long double>(t + 1 - a);
        term *= num / den;
    }
    ScaledDouble prefactor = first.to_scaled() * delta2.to_scaled().sqrt();
    if (b.tmin % 2 != 0)
        prefactor.mantissa = -prefactor.mantissa;
    int e = 0;
    const double m = static_cast<double>(std::frexp(sum, &e));
    ScaledDouble total = prefactor * ScaledDouble{m, e};
    return total.to_double();
}

/// The 24 images of a symbol under column permutations and upper/lower
/// swaps in pairs of columns.
inline std::vector<SixJ> classical_symmetry_images(const SixJ &s) {
    std::vector<SixJ> out;
    std::array<int, 3> cols{0, 1, 2};
    do {
        for (int flip = 0; flip < 4; ++flip) {
            // flip: 0 none, 1 swap columns 0&1, 2 swap columns 0&2, 3 swap columns 1&2
            std::array<HalfInt, 6> e{};
            for (int c = 0; c < 3; ++c) {
                e[c] = s.j[cols[c]];
                e[c + 3] = s.j[cols[c] + 3];
            }
            auto swap_col = [&](int c) { std::swap(e[c], e[c + 3]); };
            if (flip == 1) {
                swap_col(0);
                swap_col(1);
            } else if (flip == 2) {
                swap_col(0);
                swap_col(2);
            } else if (flip == 3) {
                swap_col(1);
                swap_col(2);
            }
            out.push_back(SixJ{e[0], e[1], e[2], e[3], e[4], e[5]});
        }
    } while (std::next_permutation(cols.begin(), cols.end()));
    return out;
}

} // namespace spinvol
