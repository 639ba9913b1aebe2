#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "spinvol/errors.hpp"
#include "spinvol/geometry.hpp"
#include "spinvol/regge.hpp"

namespace spinvol {

enum class Basis { x, y, z };

inline const char *basis_name(Basis b) {
    switch (b) {
    case Basis::x:
        return "x";
    case Basis::y:
        return "y";
    case Basis::z:
        return "z";
    }
    return "?";
}

/// K = J_a·(J_b×J_c) in a diagonal basis. ⟨x|K|x-1⟩ = i·offdiag; after the
/// rotation |x_k⟩ -> i^k|x_k⟩ it is real symmetric with zero diagonal.
struct TridiagonalOperator {
    std::vector<HalfInt> basis_labels;
    std::vector<double> offdiag; ///< offdiag[k] couples labels k and k+1

    std::size_t dim() const { return basis_labels.size(); }
};

/// α(x) for the coupling (p,q|r,s), x the upper of the two coupled labels.
/// Factors are grouped pairwise to keep intermediate magnitudes balanced.
inline double volume_alpha(double p, double q, double r, double s, double x) {
    const double x2 = x * x;
    const double f1 = (x2 - (p - q) * (p - q)) / (2 * x - 1);
    const double f2 = ((p + q + 1) * (p + q + 1) - x2) / (2 * x + 1);
    const double f3 = x2 - (r - s) * (r - s);
    const double f4 = (r + s + 1) * (r + s + 1) - x2;
    const double prod = (f1 * f3) * (f2 * f4);
    return prod > 0 ? 0.25 * std::sqrt(prod) : 0.0;
}

inline TridiagonalOperator build_k_matrix(const SevenSpinNetwork &n, Basis basis = Basis::x) {
    const auto &[a, b, c, d] = n.quad;
    HalfInt p = a, q = b, r = c, s = d;
    if (basis == Basis::y) {
        q = c;
        r = b;
    } else if (basis == Basis::z) {
        q = d;
        r = b;
        s = c;
    }
    const SpinRange range = coupling_range(p, q, r, s);
    TridiagonalOperator t;
    const auto dim = static_cast<std::size_t>(range.size());
    t.basis_labels.reserve(dim);
    range.for_each([&](HalfInt x) { t.basis_labels.push_back(x); });
    for (std::size_t k = 1; k < dim; ++k)
        t.offdiag.push_back(volume_alpha(p.to_double(), q.to_double(), r.to_double(), s.to_double(),
                                         t.basis_labels[k].to_double()));
    return t;
}

struct VolumeSpectrum {
    std::vector<double> eigenvalues; ///< ascending, λ_k = -λ_{N-1-k}
    /// eigenvectors[k] is the unit eigenvector of eigenvalues[k] in the
    /// rotated (real) basis; empty when only eigenvalues were requested.
    std::vector<std::vector<double>> eigenvectors;
};

namespace detail {

/// Implicit-shift QL on a symmetric tridiagonal matrix (diag d, subdiag e with
/// e[i] coupling i and i+1). On return d holds eigenvalues; when z is non-null
/// it accumulates the rotations into the columns of z (row-major n×n).
inline void tridiagonal_ql(std::vector<double> &d, std::vector<double> e, std::vector<double> *z) {
    const std::size_t n = d.size();
    if (n == 0)
        return;
    e.resize(n, 0.0);
    constexpr int kMaxIter = 60;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // absolute floor so zero-diagonal blocks near λ = 0 still deflate
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max(scale, std::fabs(d[i]) + std::fabs(e[i]));
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            std::size_t m = l;
            for (; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd || std::fabs(e[m]) <= 0.5 * eps * scale)
                    break;
            }
            if (m == l)
                break;
            if (++iter > kMaxIter)
                throw ConvergenceError("tridiagonal QL: no convergence for eigenvalue " + std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + (g >= 0 ? r : -r));
            double s = 1.0, c = 1.0, p = 0.0;
            bool early = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) {
                    auto &Z = *z;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = Z[k * n + i + 1];
                        Z[k * n + i + 1] = s * Z[k * n + i] + c * f;
                        Z[k * n + i] = c * Z[k * n + i] - s * f;
                    }
                }
            }
            if (early)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// First component above `tol` made positive.
inline void fix_sign(std::vector<double> &v, double tol = 1e-12) {
    for (double x : v)
        if (std::fabs(x) > tol) {
            if (x < 0)
                for (auto &y : v)
                    y = -y;
            return;
        }
}

} // namespace detail

/// Spectrum of the zero-diagonal tridiagonal operator. Eigenvalues are paired
/// exactly (λ_{N-1-k} = -λ_k, middle one 0 for odd N); eigenvectors of the
/// upper half are the lower-half ones with alternating signs, so
/// |v_k(x)| = |v_{N-1-k}(x)| holds bit for bit.
inline VolumeSpectrum diagonalize(const TridiagonalOperator &t, bool with_vectors = true) {
    const std::size_t n = t.dim();
    VolumeSpectrum out;
    if (n == 0)
        return out;
    std::vector<double> d(n, 0.0);
    std::vector<double> z;
    if (with_vectors) {
        z.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            z[i * n + i] = 1.0;
    }
    detail::tridiagonal_ql(d, t.offdiag, with_vectors ? &z : nullptr);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    out.eigenvalues.resize(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double lam = 0.5 * (d[order[k]] - d[order[n - 1 - k]]);
        out.eigenvalues[k] = lam;
        out.eigenvalues[n - 1 - k] = -lam;
    }
    if (n % 2 == 1)
        out.eigenvalues[n / 2] = 0.0;
    if (!with_vectors)
        return out;

    out.eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n / 2; ++k) {
        auto &v = out.eigenvectors[k];
        for (std::size_t i = 0; i < n; ++i)
            v[i] = z[i * n + order[k]];
        detail::fix_sign(v);
        auto &w = out.eigenvectors[n - 1 - k];
        for (std::size_t i = 0; i < n; ++i)
            w[i] = (i % 2 == 0) ? v[i] : -v[i];
        detail::fix_sign(w);
    }
    if (n % 2 == 1) {
        // null vector: odd components vanish, e_{i-1} v_{i-1} + e_i v_{i+1} = 0
        auto &v = out.eigenvectors[n / 2];
        v[0] = 1.0;
        for (std::size_t i = 1; i + 1 < n; i += 2) {
            v[i + 1] = -t.offdiag[i - 1] * v[i - 1] / t.offdiag[i];
            if (std::fabs(v[i + 1]) > 1e150)
                for (std::size_t k = 0; k <= i + 1; ++k)
                    v[k] *= 1e-150;
        }
        double norm = 0;
        for (double x : v)
            norm += x * x;
        norm = std::sqrt(norm);
        for (auto &x : v)
            x /= norm;
        detail::fix_sign(v);
    }
    return out;
}

/// |v_k(x)|, rows by eigenvalue index, columns by basis label.
inline std::vector<std::vector<double>> eigenfunction_grid(const VolumeSpectrum &spec) {
    std::vector<std::vector<double>> g = spec.eigenvectors;
    for (auto &row : g)
        for (auto &x : row)
            x = std::fabs(x);
    return g;
}

/// Candidate geometric volume √(2|K|/9) for an eigenvalue K.
inline double geometric_volume(double k_eigenvalue) { return std::sqrt(2.0 * std::fabs(k_eigenvalue) / 9.0); }

struct PotentialCurve {
    std::vector<double> x; ///< shifted diagonal length X
    std::vector<double> u_plus;
    std::vector<double> u_minus;
};

/// U±(X) = ±4·A_ab(X)·A_cd(X)/X over the classical X range of the x diagonal,
/// with sides a+shift, ..., d+shift.
inline PotentialCurve potentials(const SevenSpinNetwork &n, std::size_t samples, double shift = 0.5) {
    const double a = n.quad.a.to_double() + shift, b = n.quad.b.to_double() + shift;
    const double c = n.quad.c.to_double() + shift, d = n.quad.d.to_double() + shift;
    const double lo = std::max(std::fabs(a - b), std::fabs(c - d));
    const double hi = std::min(a + b, c + d);
    PotentialCurve pc;
    if (samples < 2 || hi <= lo)
        return pc;
    for (std::size_t i = 0; i < samples; ++i) {
        const double X = i + 1 == samples ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        double u = 0.0;
        if (X > 0)
            u = 4.0 * heron_area(a, b, X) * heron_area(c, d, X) / X;
        pc.x.push_back(X);
        pc.u_plus.push_back(u);
        pc.u_minus.push_back(0.0 - u); // +0 rather than -0 at the endpoints
    }
    return pc;
}

/// Phase-space estimate of the number of eigenvalues in [0, V]:
/// (1/π)∫ arcsin(min(1, V/U⁺(X))) dX over the classical range.
inline double semiclassical_count(const PotentialCurve &pc, double v) {
    double total = 0.0;
    auto f = [&](std::size_t i) {
        const double u = pc.u_plus[i];
        if (u <= 0)
            return v > 0 ? 0.5 * std::numbers::pi : 0.0;
        return std::asin(std::min(1.0, v / u));
    };
    for (std::size_t i = 0; i + 1 < pc.x.size(); ++i)
        total += 0.5 * (f(i) + f(i + 1)) * (pc.x[i + 1] - pc.x[i]);
    return total / std::numbers::pi;
}

} // namespace spinvol
