#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "spinvol/errors.hpp"
#include "spinvol/geometry.hpp"
#include "spinvol/parallel.hpp"
#include "spinvol/regge.hpp"

namespace spinvol {

struct ScanOptions {
    double shift = 0.5;
    /// Extra quantum-number margin around the diagonal ranges, so the
    /// classically allowed region lies strictly inside the sampled rectangle.
    double margin = 1.0;
    unsigned threads = 0;
};

/// V² sampled over one screen, with its caustic (V² = 0) and ridge curves.
/// Coordinates are unshifted diagonal labels; add `shift` for lengths.
struct ScreenGrid {
    ScreenTemplate symbol;
    double shift = 0.5;
    Grid2 v2;
    std::vector<Polyline> caustic;
    Polyline u_ridge; ///< ∂V²/∂u = 0, one point per v row inside the allowed region
    Polyline v_ridge; ///< ∂V²/∂v = 0, one point per u column inside the allowed region
    bool empty_region = false;

    double v2_at(double u, double v) const {
        return cayley_menger_v2(edges_for_screen(symbol.fixed, u, v, shift));
    }
};

namespace detail {

/// Root of a monotone function on [lo, hi] by bisection; assumes a sign change.
template <typename F> double bisect(F &&f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// ∂V²/∂u with u the AB edge (length u+shift).
inline double screen_dv2_du(const ScreenTemplate &t, double u, double v, double shift) {
    const auto s = SquaredPairs::from(edges_for_screen(t.fixed, u, v, shift));
    return 2.0 * (u + shift) * dv2_dp1(s);
}

/// ∂V²/∂v with v the CD edge.
inline double screen_dv2_dv(const ScreenTemplate &t, double u, double v, double shift) {
    const auto s = SquaredPairs::from(edges_for_screen(t.fixed, u, v, shift));
    return 2.0 * (v + shift) * dv2_dq1(s);
}

inline ScreenGrid caustic_scan(const SevenSpinNetwork &n, Screen screen, std::size_t resolution,
                               const ScanOptions &opt = {}) {
    if (resolution < 16)
        throw DomainError("caustic_scan resolution must be at least 16");
    ScreenGrid out;
    out.symbol = screen_symbol(n, screen);
    out.shift = opt.shift;
    const auto &t = out.symbol;
    Grid2 &g = out.v2;
    // lengths stay nonnegative so V² is not mirrored through zero
    g.u0 = std::max(t.u_range.lo.to_double() - opt.margin, -opt.shift);
    g.u1 = t.u_range.hi.to_double() + opt.margin;
    g.v0 = std::max(t.v_range.lo.to_double() - opt.margin, -opt.shift);
    g.v1 = t.v_range.hi.to_double() + opt.margin;
    g.nu = g.nv = resolution;
    g.values.assign(resolution * resolution, 0.0);
    parallel_for(
        resolution,
        [&](std::size_t iv) {
            const double v = g.v_at(iv);
            for (std::size_t iu = 0; iu < resolution; ++iu)
                g.values[iv * resolution + iu] = out.v2_at(g.u_at(iu), v);
        },
        opt.threads);

    out.empty_region = std::none_of(g.values.begin(), g.values.end(), [](double x) { return x > 0; });
    if (out.empty_region)
        return out;
    out.caustic = marching_squares(g, 0.0);

    // V² is quadratic in AB² (and in CD²), so each row or column holds at
    // most one stationary point.
    for (std::size_t iv = 0; iv < resolution; ++iv) {
        const double v = g.v_at(iv);
        auto f = [&](double u) {
            return dv2_dp1(SquaredPairs::from(edges_for_screen(t.fixed, u, v, opt.shift)));
        };
        if ((f(g.u0) > 0) == (f(g.u1) > 0))
            continue;
        const double u = detail::bisect(f, g.u0, g.u1);
        if (out.v2_at(u, v) >= 0)
            out.u_ridge.push_back({u, v});
    }
    for (std::size_t iu = 0; iu < resolution; ++iu) {
        const double u = g.u_at(iu);
        auto f = [&](double v) {
            return dv2_dq1(SquaredPairs::from(edges_for_screen(t.fixed, u, v, opt.shift)));
        };
        if ((f(g.v0) > 0) == (f(g.v1) > 0))
            continue;
        const double v = detail::bisect(f, g.v0, g.v1);
        if (out.v2_at(u, v) >= 0)
            out.v_ridge.push_back({u, v});
    }
    return out;
}

/// Sample on a constant-volume shell of the xyz view.
struct EggSample {
    int shell = 0; ///< index into kEggFractions
    double x = 0, y = 0, z = 0;
    double volume = 0;
};

inline constexpr double kEggFractions[4] = {0.0, 0.25, 0.5, 0.75};

struct EggSurface {
    double v_max = 0;
    std::vector<std::vector<Polyline>> shells_xz; ///< per shell, contours in (x, z)
    std::vector<EggSample> samples;
};

/// Constant-V shells over the xz screen lifted to (x, y, z), with y fixed by
/// x'² + y'² + z'² = a'² + b'² + c'² + d'² on shifted lengths.
inline EggSurface egg_surface(const SevenSpinNetwork &n, std::size_t resolution, const ScanOptions &opt = {}) {
    const ScreenGrid xz = caustic_scan(n, Screen::xz, resolution, opt);
    EggSurface egg;
    const auto &v2 = xz.v2.values;
    egg.v_max = std::sqrt(std::max(0.0, *std::max_element(v2.begin(), v2.end())));
    if (egg.v_max <= 0)
        return egg;
    const double sh = opt.shift;
    double sides2 = 0;
    for (auto j : n.quad.as_array())
        sides2 += (j.to_double() + sh) * (j.to_double() + sh);
    for (int s = 0; s < 4; ++s) {
        const double level = kEggFractions[s] * egg.v_max;
        // contour V² rather than V, so shell 0 is exactly the caustic
        auto contours = marching_squares(xz.v2, level * level);
        for (const auto &line : contours)
            for (const auto &p : line) {
                const double xs = p.u + sh, zs = p.v + sh;
                const double y2 = sides2 - xs * xs - zs * zs;
                if (y2 < 0)
                    continue;
                egg.samples.push_back({s, p.u, std::sqrt(y2) - sh, p.v, level});
            }
        egg.shells_xz.push_back(std::move(contours));
    }
    return egg;
}

} // namespace spinvol
