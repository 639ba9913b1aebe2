#pragma once

// Brute-force volume operator: explicit spin matrices on the tensor product
// of four spins, restricted to total M = 0 and then projected onto J = 0.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <complex>
#include <vector>

#include "spinvol/errors.hpp"
#include "spinvol/regge.hpp"

namespace spinvol {

struct OracleVolume {
    Eigen::MatrixXcd k;            ///< K on an orthonormal basis of the J = 0 subspace
    std::vector<double> spectrum;  ///< ascending
    std::size_t closure_dim = 0;
    /// max |entry| of J_b·(J_c×J_d), J_a·(J_d×J_c), J_a·(J_b×J_d) minus K on
    /// the subspace, with J_d oriented as J_a + J_b + J_c
    std::array<double, 3> chain_deviation{};
};

inline constexpr int kVolumeOracleMaxTwice = 4;

namespace oracle_detail {

using cd = std::complex<double>;

/// Jx, Jy, Jz for spin j (2j = tj) in the basis m = j, j-1, ..., -j.
inline std::array<Eigen::MatrixXcd, 3> spin_matrices(int tj) {
    const int dim = tj + 1;
    const double j = 0.5 * tj;
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim), jz = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const double m = j - k;
        jz(k, k) = m;
        if (k > 0)
            jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    const Eigen::MatrixXcd jm = jp.adjoint();
    return {(jp + jm) / 2.0, (jp - jm) / cd(0, 2), jz};
}

} // namespace oracle_detail

/// Dense K = J_a·(J_b×J_c) on the closure subspace. Spins must be ≤ 2.
inline OracleVolume oracle_k_matrix(const QuadSpins &q) {
    const std::array<HalfInt, 4> spins = q.as_array();
    for (auto s : spins)
        if (s.twice() < 0 || s.twice() > kVolumeOracleMaxTwice)
            throw RefusalError("volume oracle limited to spins <= 2, got " + q.str());
    using oracle_detail::cd;
    std::array<std::array<Eigen::MatrixXcd, 3>, 4> J;
    std::array<int, 4> tj{};
    for (int s = 0; s < 4; ++s) {
        tj[s] = static_cast<int>(spins[s].twice());
        J[s] = oracle_detail::spin_matrices(tj[s]);
    }

    // product states |k_a k_b k_c k_d⟩ with Σm = 0, k indexing m = j - k
    std::vector<std::array<int, 4>> states;
    for (int ka = 0; ka <= tj[0]; ++ka)
        for (int kb = 0; kb <= tj[1]; ++kb)
            for (int kc = 0; kc <= tj[2]; ++kc)
                for (int kd = 0; kd <= tj[3]; ++kd)
                    if ((tj[0] - 2 * ka) + (tj[1] - 2 * kb) + (tj[2] - 2 * kc) + (tj[3] - 2 * kd) == 0)
                        states.push_back({ka, kb, kc, kd});
    const auto n = static_cast<Eigen::Index>(states.size());
    OracleVolume out;
    if (n == 0)
        return out;

    // sign[s] orients spin s: -1 turns the tensor factor J_d into the resultant
    auto element = [&](const std::array<int, 4> &ops_spin, const std::array<int, 4> &ops_comp, int count,
                       const std::array<int, 4> &bra, const std::array<int, 4> &ket) {
        cd v = 1.0;
        std::array<bool, 4> touched{};
        for (int o = 0; o < count; ++o) {
            const int s = ops_spin[o];
            touched[s] = true;
            v *= J[s][ops_comp[o]](bra[s], ket[s]);
        }
        for (int s = 0; s < 4; ++s)
            if (!touched[s] && bra[s] != ket[s])
                return cd(0.0);
        return v;
    };
    auto triple = [&](int s1, int s2, int s3, double orient) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        constexpr int eps[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                                   {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) {
                cd sum = 0.0;
                for (const auto &e : eps)
                    sum += static_cast<double>(e[3]) *
                           element({s1, s2, s3, 0}, {e[0], e[1], e[2], 0}, 3, states[r], states[c]);
                m(r, c) = orient * sum;
            }
        return m;
    };
    // J² = Σ_s j_s(j_s+1) + 2 Σ_{s<t} J_s·J_t
    Eigen::MatrixXcd j2 = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        double diag = 0;
        for (int s = 0; s < 4; ++s)
            diag += 0.25 * tj[s] * (tj[s] + 2);
        j2(r, r) += diag;
        for (Eigen::Index c = 0; c < n; ++c)
            for (int s = 0; s < 4; ++s)
                for (int t = s + 1; t < 4; ++t)
                    for (int comp = 0; comp < 3; ++comp)
                        j2(r, c) += 2.0 * element({s, t, 0, 0}, {comp, comp, 0, 0}, 2, states[r], states[c]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> j2_solver(j2);
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::fabs(j2_solver.eigenvalues()(i)) < 1e-8)
            null_cols.push_back(i);
    out.closure_dim = null_cols.size();
    if (null_cols.empty())
        return out;
    Eigen::MatrixXcd P(n, static_cast<Eigen::Index>(null_cols.size()));
    for (std::size_t i = 0; i < null_cols.size(); ++i)
        P.col(static_cast<Eigen::Index>(i)) = j2_solver.eigenvectors().col(null_cols[i]);

    const int a = 0, b = 1, c = 2, d = 3;
    auto project = [&](const Eigen::MatrixXcd &m) -> Eigen::MatrixXcd { return P.adjoint() * m * P; };
    out.k = project(triple(a, b, c, 1.0));
    // each remaining product has exactly one J_d factor, so the resultant
    // orientation flips its overall sign
    const std::array<Eigen::MatrixXcd, 3> chain{project(triple(b, c, d, -1.0)), project(triple(a, d, c, -1.0)),
                                                project(triple(a, b, d, -1.0))};
    for (int i = 0; i < 3; ++i)
        out.chain_deviation[i] = (chain[i] - out.k).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ks(out.k, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < ks.eigenvalues().size(); ++i)
        out.spectrum.push_back(ks.eigenvalues()(i));
    std::sort(out.spectrum.begin(), out.spectrum.end());
    return out;
}

} // namespace spinvol
