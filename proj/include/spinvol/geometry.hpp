#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "spinvol/sixj.hpp"

namespace spinvol {

/// Edge lengths of tetrahedron ABCD. Opposite pairs: (AB,CD), (AC,BD), (BC,AD).
struct EdgeLengths {
    double ab = 0, ac = 0, bc = 0, ad = 0, bd = 0, cd = 0;
};

/// Squared lengths grouped by opposite pairs: p[i] and q[i] are opposite.
struct SquaredPairs {
    std::array<double, 3> p{}; ///< AB, AC, BC
    std::array<double, 3> q{}; ///< CD, BD, AD

    static SquaredPairs from(const EdgeLengths &e) {
        return {{e.ab * e.ab, e.ac * e.ac, e.bc * e.bc}, {e.cd * e.cd, e.bd * e.bd, e.ad * e.ad}};
    }
};

/// 144 V² as a polynomial in the squared edge lengths.
inline double cayley_menger_144v2(const SquaredPairs &s) {
    const auto &[P1, P2, P3] = s.p;
    const auto &[Q1, Q2, Q3] = s.q;
    const double t1 = P1 * Q1 * (P2 + Q2 + P3 + Q3 - P1 - Q1);
    const double t2 = P2 * Q2 * (P1 + Q1 + P3 + Q3 - P2 - Q2);
    const double t3 = P3 * Q3 * (P1 + Q1 + P2 + Q2 - P3 - Q3);
    // one product per face: ABC, ABD, ACD, BCD
    const double faces = P1 * P2 * P3 + P1 * Q2 * Q3 + Q1 * P2 * Q3 + Q1 * Q2 * P3;
    return t1 + t2 + t3 - faces;
}

/// V² of the tetrahedron; negative values mark classically forbidden edge sets.
inline double cayley_menger_v2(const EdgeLengths &e) {
    return cayley_menger_144v2(SquaredPairs::from(e)) / 144.0;
}

/// ∂V²/∂(AB²) and ∂V²/∂(CD²).
inline double dv2_dp1(const SquaredPairs &s) {
    const auto &[P1, P2, P3] = s.p;
    const auto &[Q1, Q2, Q3] = s.q;
    const double S = P2 + Q2 + P3 + Q3;
    return (Q1 * (S - 2 * P1 - Q1) + P2 * Q2 + P3 * Q3 - P2 * P3 - Q2 * Q3) / 144.0;
}

inline double dv2_dq1(const SquaredPairs &s) {
    const auto &[P1, P2, P3] = s.p;
    const auto &[Q1, Q2, Q3] = s.q;
    const double S = P2 + Q2 + P3 + Q3;
    return (P1 * (S - P1 - 2 * Q1) + P2 * Q2 + P3 * Q3 - P2 * Q3 - Q2 * P3) / 144.0;
}

namespace detail {

/// Determinant by Gaussian elimination with partial pivoting.
template <std::size_t N> double determinant(std::array<std::array<double, N>, N> m) {
    double det = 1.0;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < N; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col]))
                piv = r;
        if (m[piv][col] == 0.0)
            return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < N; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

} // namespace detail

/// 288 V² as the bordered 5×5 squared-distance determinant.
inline double cayley_menger_v2_det(const EdgeLengths &e) {
    const double d01 = e.ab * e.ab, d02 = e.ac * e.ac, d03 = e.ad * e.ad;
    const double d12 = e.bc * e.bc, d13 = e.bd * e.bd, d23 = e.cd * e.cd;
    std::array<std::array<double, 5>, 5> m{{{0, 1, 1, 1, 1},
                                            {1, 0, d01, d02, d03},
                                            {1, d01, 0, d12, d13},
                                            {1, d02, d12, 0, d23},
                                            {1, d03, d13, d23, 0}}};
    return detail::determinant(m) / 288.0;
}

/// 16·Area² from the bordered 4×4 determinant of a triangle (sign flipped so
/// the result is positive for real triangles).
inline double cayley_menger_triangle_minor(double a, double b, double c) {
    const double A = a * a, B = b * b, C = c * c;
    std::array<std::array<double, 4>, 4> m{{{0, 1, 1, 1}, {1, 0, C, B}, {1, C, 0, A}, {1, B, A, 0}}};
    return -detail::determinant(m);
}

/// Triangle area by Heron's formula in Kahan's cancellation-safe ordering.
/// Returns 0 for degenerate or impossible triangles.
inline double heron_area(double a, double b, double c) {
    std::array<double, 3> s{a, b, c};
    std::sort(s.begin(), s.end(), std::greater<>());
    const double x = s[0], y = s[1], z = s[2];
    const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    return p > 0 ? 0.25 * std::sqrt(p) : 0.0;
}

/// Ponzano-Regge tetrahedron of {a b x; c d z}: AB=x, AC=a, BC=b, AD=d, BD=c,
/// CD=z, each plus `shift`. Faces are the four triads; opposite edges are the
/// columns.
inline EdgeLengths edges_for_sixj(const SixJ &s, double shift = 0.5) {
    const auto &j = s.j;
    return {j[2].to_double() + shift, j[0].to_double() + shift, j[1].to_double() + shift,
            j[4].to_double() + shift, j[3].to_double() + shift, j[5].to_double() + shift};
}

/// Same as edges_for_sixj with real-valued diagonals u (AB) and v (CD).
inline EdgeLengths edges_for_screen(const std::array<HalfInt, 4> &fixed, double u, double v,
                                    double shift) {
    return {u + shift,
            fixed[0].to_double() + shift,
            fixed[1].to_double() + shift,
            fixed[3].to_double() + shift,
            fixed[2].to_double() + shift,
            v + shift};
}

/// Point on a 2D curve in screen coordinates (unshifted quantum numbers).
struct Point2 {
    double u = 0, v = 0;
};

using Polyline = std::vector<Point2>;

inline bool is_closed(const Polyline &p) {
    return p.size() > 2 && p.front().u == p.back().u && p.front().v == p.back().v;
}

/// Regular sampling of a scalar field f on [u0,u1]×[v0,v1], nu×nv nodes.
struct Grid2 {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    std::size_t nu = 0, nv = 0;
    std::vector<double> values; ///< row-major: values[iv*nu + iu]

    double u_at(std::size_t iu) const { return u0 + (u1 - u0) * static_cast<double>(iu) / static_cast<double>(nu - 1); }
    double v_at(std::size_t iv) const { return v0 + (v1 - v0) * static_cast<double>(iv) / static_cast<double>(nv - 1); }
    double at(std::size_t iu, std::size_t iv) const { return values[iv * nu + iu]; }
};

/// Level-set extraction by marching squares with linear interpolation.
/// Nodes with f > level are "inside". Crossings are shared between the
/// adjacent cells, so segments chain exactly into polylines; a closed curve
/// repeats its first point at the end. Saddle cells are split by the cell
/// average.
inline std::vector<Polyline> marching_squares(const Grid2 &g, double level) {
    // Edge keys: horizontal edge (iu,iv)-(iu+1,iv) -> 2*(iv*nu+iu), vertical
    // edge (iu,iv)-(iu,iv+1) -> 2*(iv*nu+iu)+1.
    using Key = std::size_t;
    auto hkey = [&](std::size_t iu, std::size_t iv) -> Key { return 2 * (iv * g.nu + iu); };
    auto vkey = [&](std::size_t iu, std::size_t iv) -> Key { return 2 * (iv * g.nu + iu) + 1; };
    auto crossing = [&](Key k) {
        const std::size_t node = k / 2;
        const std::size_t iu = node % g.nu, iv = node / g.nu;
        const bool vertical = k % 2 == 1;
        const std::size_t ju = vertical ? iu : iu + 1, jv = vertical ? iv + 1 : iv;
        const double f0 = g.at(iu, iv) - level, f1 = g.at(ju, jv) - level;
        const double t = f0 / (f0 - f1);
        return Point2{g.u_at(iu) + t * (g.u_at(ju) - g.u_at(iu)), g.v_at(iv) + t * (g.v_at(jv) - g.v_at(iv))};
    };

    std::map<Key, std::vector<Key>> adj;
    auto link = [&](Key a, Key b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (std::size_t iv = 0; iv + 1 < g.nv; ++iv)
        for (std::size_t iu = 0; iu + 1 < g.nu; ++iu) {
            const double f00 = g.at(iu, iv), f10 = g.at(iu + 1, iv);
            const double f01 = g.at(iu, iv + 1), f11 = g.at(iu + 1, iv + 1);
            const int idx = (f00 > level ? 1 : 0) | (f10 > level ? 2 : 0) | (f11 > level ? 4 : 0) |
                            (f01 > level ? 8 : 0);
            const Key bottom = hkey(iu, iv), top = hkey(iu, iv + 1);
            const Key left = vkey(iu, iv), right = vkey(iu + 1, iv);
            switch (idx) {
            case 0:
            case 15:
                break;
            case 1:
            case 14:
                link(left, bottom);
                break;
            case 2:
            case 13:
                link(bottom, right);
                break;
            case 3:
            case 12:
                link(left, right);
                break;
            case 4:
            case 11:
                link(right, top);
                break;
            case 6:
            case 9:
                link(bottom, top);
                break;
            case 7:
            case 8:
                link(left, top);
                break;
            case 5:
            case 10: {
                const bool center_in = 0.25 * (f00 + f10 + f01 + f11) > level;
                // idx 5: corners 00 and 11 inside
                if ((idx == 5) == center_in) {
                    link(left, top);
                    link(bottom, right);
                } else {
                    link(left, bottom);
                    link(right, top);
                }
                break;
            }
            default:
                break;
            }
        }

    std::vector<Polyline> out;
    std::map<Key, bool> used;
    auto walk = [&](Key start) {
        Polyline line{crossing(start)};
        used[start] = true;
        Key prev = start, cur = start;
        while (true) {
            bool advanced = false;
            for (Key n : adj[cur]) {
                if (n == prev)
                    continue;
                if (n == start) {
                    line.push_back(line.front());
                    return line;
                }
                if (!used[n]) {
                    used[n] = true;
                    line.push_back(crossing(n));
                    prev = cur;
                    cur = n;
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                return line;
        }
    };
    // open chains start at endpoints (degree 1), then the remaining loops
    for (const auto &[k, nb] : adj)
        if (nb.size() == 1 && !used[k])
            out.push_back(walk(k));
    for (const auto &[k, nb] : adj)
        if (!used[k])
            out.push_back(walk(k));
    return out;
}

} // namespace spinvol
