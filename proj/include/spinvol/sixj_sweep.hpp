#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "spinvol/half_int.hpp"
#include "spinvol/sixj.hpp"
#include "spinvol/triad.hpp"

namespace spinvol {

struct SweepPoint {
    HalfInt x;
    double value = 0.0;
};

namespace detail {

/// Coefficients of the three-term recurrence in j1 for {j1 j2 j3; l1 l2 l3}:
///   j1 E(j1+1) f(j1+1) + F(j1) f(j1) + (j1+1) E(j1) f(j1-1) = 0
struct SixjRecurrence {
    long double j2, j3, l1, l2, l3;

    long double E(long double j1) const {
        const long double s = j1 * j1;
        // grouped in pairs so each factor stays moderate before the product
        const long double p1 = (s - (j2 - j3) * (j2 - j3)) * ((j2 + j3 + 1) * (j2 + j3 + 1) - s);
        const long double p2 = (s - (l2 - l3) * (l2 - l3)) * ((l2 + l3 + 1) * (l2 + l3 + 1) - s);
        const long double p = p1 * p2;
        return p > 0 ? std::sqrt(p) : 0.0L;
    }

    long double F(long double j1) const {
        const long double J1 = j1 * (j1 + 1), J2 = j2 * (j2 + 1), J3 = j3 * (j3 + 1);
        const long double L1 = l1 * (l1 + 1), L2 = l2 * (l2 + 1), L3 = l3 * (l3 + 1);
        return (2 * j1 + 1) * (J1 * (-J1 + J2 + J3 - 2 * L1) + L2 * (J1 + J2 - J3) + L3 * (J1 - J2 + J3));
    }
};

/// Divides v[from..to] by |v[probe]| once that entry gets huge.
inline void rescale_if_large(std::vector<long double> &v, std::size_t from, std::size_t to,
                             std::size_t probe) {
    constexpr long double kBig = 1e1000L;
    const long double m = std::fabs(v[probe]);
    if (m > kBig)
        for (std::size_t k = from; k <= to; ++k)
            v[k] /= m;
}

} // namespace detail

/// Admissible range of x in {a b x; c d z}.
inline SpinRange sweep_range(HalfInt a, HalfInt b, HalfInt c, HalfInt d) {
    SpinRange r{std::max(abs(a - b), abs(c - d)), std::min(a + b, c + d)};
    if ((r.lo.twice() - (a + b).twice()) % 2 != 0 || (a + b + c + d).twice() % 2 != 0)
        return {HalfInt::from_int(1), HalfInt::from_int(0)};
    return r;
}

/// All {a b x; c d z} over the admissible x, by two-sided three-term
/// recurrence. The forward solution runs up to the upper turning point, the
/// backward one down to it, they are matched there by least squares over a
/// small window, and the result is normalized by
/// Σ_x (2x+1)(2z+1) {..}² = 1. The overall sign is fixed at x = x_max, where
/// the stretched symbol has sign (-1)^(a+b+c+d).
inline std::vector<SweepPoint> sixj_sweep_x(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt z) {
    const SpinRange range = sweep_range(a, b, c, d);
    if (range.empty() || !triangle_ok(a, d, z) || !triangle_ok(b, c, z))
        return {};
    const auto n = static_cast<std::size_t>(range.size());
    // Recurrence variable j1 = x in the equivalent symbol {x a b; z c d}.
    const detail::SixjRecurrence rec{a.to_double(), b.to_double(), z.to_double(), c.to_double(),
                                     d.to_double()};
    auto label = [&](std::size_t k) { return static_cast<long double>(range.at(static_cast<std::int64_t>(k)).to_double()); };

    std::vector<long double> f(n, 0.0L);
    if (n == 1) {
        f[0] = 1.0L;
    } else {
        // Backward from x_max until |g| stops growing: the upper turning point.
        std::vector<long double> g(n + 1, 0.0L);
        g[n - 1] = 1.0L;
        std::size_t turn = 0;
        bool found = false;
        for (std::size_t k = n - 1; k >= 1; --k) {
            const long double x = label(k);
            g[k - 1] = -(rec.F(x) * g[k] + x * rec.E(x + 1) * g[k + 1]) / ((x + 1) * rec.E(x));
            detail::rescale_if_large(g, k - 1, n - 1, k - 1);
            if (!found && std::fabs(g[k - 1]) < std::fabs(g[k])) {
                turn = k;
                found = true;
            }
            if (found && k + 1 <= turn)
                break;
        }
        const std::size_t lo = turn >= 2 ? turn - 2 : 0;
        const std::size_t hi = std::min(n - 1, turn + 2);

        // Forward from x_min through the lower forbidden region up to the window.
        f[0] = 1.0L;
        if (const long double x = label(0); x == 0.0L) {
            // ratio {1 a a; z c c} / {0 a a; z c c} from the closed forms
            const long double A = rec.j2, C = rec.l2, Z = rec.l1;
            f[1] = -(A * (A + 1) + C * (C + 1) - Z * (Z + 1)) / (2 * std::sqrt(A * (A + 1) * C * (C + 1)));
        } else {
            f[1] = -rec.F(x) * f[0] / (x * rec.E(x + 1));
        }
        for (std::size_t k = 1; k + 1 <= hi; ++k) {
            const long double x = label(k);
            f[k + 1] = -(rec.F(x) * f[k] + (x + 1) * rec.E(x) * f[k - 1]) / (x * rec.E(x + 1));
            detail::rescale_if_large(f, 0, k + 1, k + 1);
        }

        long double fg = 0, gg = 0;
        for (std::size_t k = lo; k <= hi; ++k) {
            fg += f[k] * g[k];
            gg += g[k] * g[k];
        }
        const long double scale = fg / gg;
        for (std::size_t k = turn; k < n; ++k)
            f[k] = g[k] * scale;
    }

    long double norm = 0.0L;
    long double maxabs = 0.0L;
    for (auto v : f)
        maxabs = std::max(maxabs, std::fabs(v));
    for (std::size_t k = 0; k < n; ++k) {
        const long double v = f[k] / maxabs;
        norm += (2 * label(k) + 1) * (2 * z.to_double() + 1) * v * v;
    }
    const int sign_top = phase(a + b + c + d);
    const long double top = f[n - 1];
    long double s = 1.0L / (maxabs * std::sqrt(norm));
    if ((top < 0) != (sign_top < 0))
        s = -s;

    std::vector<SweepPoint> out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = {range.at(static_cast<std::int64_t>(k)), static_cast<double>(f[k] * s)};
    return out;
}

/// Sweep of the entry at `position` (0..5, row-major) of a 6j template; the
/// other five entries are held fixed. Reduced to the {a b x; c d z} form by
/// the classical symmetries.
inline std::vector<SweepPoint> sixj_sweep(const SixJ &templ, int position) {
    const int col = position % 3;
    const int row = position / 3;
    const int c1 = (col + 1) % 3;
    const int c2 = (col + 2) % 3;
    const auto &e = templ.j;
    if (row == 0)
        return sixj_sweep_x(e[c1], e[c2], e[c1 + 3], e[c2 + 3], e[col + 3]);
    return sixj_sweep_x(e[c1 + 3], e[c2], e[c1], e[c2 + 3], e[col]);
}

} // namespace spinvol
