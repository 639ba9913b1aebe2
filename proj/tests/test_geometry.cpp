#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "spinvol/geometry.hpp"
#include "spinvol/screen.hpp"

using namespace spinvol;

namespace {

HalfInt j(int v) { return HalfInt::from_int(v); }

EdgeLengths random_edges(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> d(0.5, 3.0);
    return {d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)};
}

/// Edge lengths of the tetrahedron with vertices relabeled by perm.
EdgeLengths relabel(const EdgeLengths &e, const std::array<int, 4> &perm) {
    double m[4][4] = {};
    auto set = [&](int i, int k, double v) { m[i][k] = m[k][i] = v; };
    set(0, 1, e.ab);
    set(0, 2, e.ac);
    set(1, 2, e.bc);
    set(0, 3, e.ad);
    set(1, 3, e.bd);
    set(2, 3, e.cd);
    auto g = [&](int i, int k) { return m[perm[i]][perm[k]]; };
    return {g(0, 1), g(0, 2), g(1, 2), g(0, 3), g(1, 3), g(2, 3)};
}

} // namespace

TEST_CASE("Cayley-Menger volume examples", "[geometry]") {
    CHECK(cayley_menger_v2({1, 1, 1, 1, 1, 1}) == Catch::Approx(1.0 / 72).epsilon(1e-14));
    CHECK(cayley_menger_v2_det({1, 1, 1, 1, 1, 1}) == Catch::Approx(1.0 / 72).epsilon(1e-12));
    // A, B, C, D coplanar: AB=2 with C and D both at the midpoint of AB
    CHECK(std::fabs(cayley_menger_v2({2, 1, 1, 1, 1, 0})) < 1e-14);
    // right-corner tetrahedron with unit legs: V = 1/6
    const double r2 = std::sqrt(2.0);
    CHECK(cayley_menger_v2({1, 1, r2, 1, r2, r2}) == Catch::Approx(1.0 / 36).epsilon(1e-14));
}

TEST_CASE("Cayley-Menger polynomial equals the bordered determinant", "[geometry][property]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto e = random_edges(rng);
        const double p = cayley_menger_v2(e);
        const double d = cayley_menger_v2_det(e);
        CHECK(std::fabs(p - d) < 1e-12 * std::max(1.0, std::fabs(p)) * 100);
    }
}

TEST_CASE("V² is invariant under vertex relabeling and scales as λ⁶", "[geometry][property]") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = random_edges(rng);
        const double ref = cayley_menger_v2(e);
        std::array<int, 4> perm{0, 1, 2, 3};
        int count = 0;
        do {
            CHECK(cayley_menger_v2(relabel(e, perm)) ==
                  Catch::Approx(ref).epsilon(1e-12).margin(1e-12 * 25));
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(count == 24);
        const double lam = 1.7;
        const EdgeLengths s{lam * e.ab, lam * e.ac, lam * e.bc, lam * e.ad, lam * e.bd, lam * e.cd};
        CHECK(cayley_menger_v2(s) == Catch::Approx(std::pow(lam, 6) * ref).epsilon(1e-10).margin(1e-10));
    }
}

TEST_CASE("closed-form derivatives match finite differences", "[geometry]") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = SquaredPairs::from(random_edges(rng));
        const double h = 1e-6;
        auto f = [](SquaredPairs t) { return cayley_menger_144v2(t) / 144.0; };
        auto sp = s, sm = s;
        sp.p[0] += h;
        sm.p[0] -= h;
        CHECK(dv2_dp1(s) == Catch::Approx((f(sp) - f(sm)) / (2 * h)).margin(1e-7));
        sp = s;
        sm = s;
        sp.q[0] += h;
        sm.q[0] -= h;
        CHECK(dv2_dq1(s) == Catch::Approx((f(sp) - f(sm)) / (2 * h)).margin(1e-7));
    }
}

TEST_CASE("Heron agrees with the triangle Cayley-Menger minor", "[geometry][property]") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> d(0.1, 10.0);
    int done = 0;
    while (done < 1000) {
        const double a = d(rng), b = d(rng), c = d(rng);
        if (a + b <= c || a + c <= b || b + c <= a)
            continue;
        ++done;
        const double area = heron_area(a, b, c);
        const double minor = cayley_menger_triangle_minor(a, b, c);
        const double scale = std::pow(std::max({a, b, c}), 4);
        CHECK(std::fabs(16 * area * area - minor) <= 1e-12 * scale);
    }
    CHECK(heron_area(1, 1, 2) == 0.0);
    CHECK(heron_area(3, 4, 5) == Catch::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("edges_for_sixj builds the Ponzano-Regge tetrahedron", "[geometry]") {
    const SixJ s{j(30), j(45), j(50), j(55), j(60), j(40)};
    const auto e = edges_for_sixj(s, 0.5);
    // faces: ABC (x,a,b), ABD (x,d,c), ACD (a,d,z), BCD (b,c,z)
    auto sorted = [](std::array<double, 3> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    CHECK(sorted({e.ab, e.ac, e.bc}) == sorted({50.5, 30.5, 45.5}));
    CHECK(sorted({e.ab, e.ad, e.bd}) == sorted({50.5, 60.5, 55.5}));
    CHECK(sorted({e.ac, e.ad, e.cd}) == sorted({30.5, 60.5, 40.5}));
    CHECK(sorted({e.bc, e.bd, e.cd}) == sorted({45.5, 55.5, 40.5}));

    // column permutations give congruent tetrahedra
    const double ref = cayley_menger_v2(e);
    for (const auto &img : classical_symmetry_images(s))
        CHECK(cayley_menger_v2(edges_for_sixj(img)) == Catch::Approx(ref).epsilon(1e-12));

    // the semiclassical shift changes V²
    const double unshifted = cayley_menger_v2(edges_for_sixj(s, 0.0));
    CHECK(unshifted > 0);
    CHECK(ref > unshifted);
}

TEST_CASE("caustic scan of (30,45,55,60)", "[geometry][caustic]") {
    const auto n = canonicalize({j(30), j(45), j(55), j(60)});
    const auto g = caustic_scan(n, Screen::xz, 256);
    REQUIRE_FALSE(g.empty_region);
    REQUIRE(g.caustic.size() == 1);
    CHECK(is_closed(g.caustic.front()));
    // classical bounds on the shifted diagonals: |a'-b'| <= x' <= a'+b', |a'-d'| <= z' <= a'+d'
    const double tol = 1e-3;
    for (const auto &p : g.caustic.front()) {
        CHECK(p.u + 0.5 >= 15.0 - tol);
        CHECK(p.u + 0.5 <= 76.0 + tol);
        CHECK(p.v + 0.5 >= 30.0 - tol);
        CHECK(p.v + 0.5 <= 91.0 + tol);
    }
    // center of the allowed region
    double cu = 0, cv = 0;
    for (const auto &p : g.caustic.front()) {
        cu += p.u;
        cv += p.v;
    }
    cu /= static_cast<double>(g.caustic.front().size());
    cv /= static_cast<double>(g.caustic.front().size());
    CHECK(g.v2_at(cu, cv) > 0);
    CHECK_FALSE(g.u_ridge.empty());
    CHECK_FALSE(g.v_ridge.empty());
}

TEST_CASE("caustic points converge with resolution", "[geometry][caustic]") {
    const auto n = canonicalize({j(30), j(45), j(55), j(60)});
    auto worst = [&](std::size_t res) {
        const auto g = caustic_scan(n, Screen::xz, res);
        double w = 0;
        for (const auto &line : g.caustic)
            for (const auto &p : line)
                w = std::max(w, std::fabs(g.v2_at(p.u, p.v)));
        double vmax = *std::max_element(g.v2.values.begin(), g.v2.values.end());
        return w / vmax;
    };
    const double e1 = worst(64), e2 = worst(128), e3 = worst(256);
    CHECK(e2 < e1);
    CHECK(e3 < e2);
    CHECK(e3 < e1 / 4);
}

TEST_CASE("ridges meet the caustic tangentially", "[geometry][ridge]") {
    const auto n = canonicalize({j(30), j(45), j(55), j(60)});
    const auto g = caustic_scan(n, Screen::xz, 256);
    const double vmax = *std::max_element(g.v2.values.begin(), g.v2.values.end());
    for (const auto &p : g.u_ridge) {
        // the closed-form root of ∂V²/∂(AB²) = 0, linear in AB²
        const auto s = SquaredPairs::from(edges_for_screen(g.symbol.fixed, p.u, p.v, 0.5));
        const double Q1 = s.q[0], P2 = s.p[1], Q2 = s.q[1], P3 = s.p[2], Q3 = s.q[2];
        const double S = P2 + Q2 + P3 + Q3;
        const double P1 = (Q1 * (S - Q1) + P2 * Q2 + P3 * Q3 - P2 * P3 - Q2 * Q3) / (2 * Q1);
        CHECK(std::sqrt(P1) - 0.5 == Catch::Approx(p.u).epsilon(1e-10));
        CHECK(g.v2_at(p.u, p.v) >= 0);
    }
    // the ridge ends where it touches the caustic: V² and ∂V²/∂x both near zero
    const double step = (g.v2.v1 - g.v2.v0) / 255.0;
    for (const auto &p : {g.u_ridge.front(), g.u_ridge.back()}) {
        CHECK(std::fabs(screen_dv2_du(g.symbol, p.u, p.v, 0.5)) < 1e-9 * vmax);
        CHECK(g.v2_at(p.u, p.v) < 0.05 * vmax);
        double nearest = 1e300;
        for (const auto &c : g.caustic.front())
            nearest = std::min(nearest, std::hypot(c.u - p.u, c.v - p.v));
        CHECK(nearest < 3 * step);
    }
}

TEST_CASE("symmetric network gives an x<->z symmetric screen", "[geometry][caustic]") {
    const auto n = canonicalize({j(100), j(100), j(100), j(100)});
    const auto g = caustic_scan(n, Screen::xz, 128);
    const double vmax = *std::max_element(g.v2.values.begin(), g.v2.values.end());
    double worst = 0;
    for (std::size_t iv = 0; iv < g.v2.nv; ++iv)
        for (std::size_t iu = 0; iu < g.v2.nu; ++iu)
            worst = std::max(worst, std::fabs(g.v2.at(iu, iv) - g.v2.at(iv, iu)));
    CHECK(worst <= 1e-12 * vmax);
}

TEST_CASE("forbidden-only screen raises the warning flag", "[geometry][caustic]") {
    // a flat quadruple: every tetrahedron is degenerate or forbidden
    const auto n = canonicalize({j(0), j(0), j(0), j(0)});
    const auto g = caustic_scan(n, Screen::xz, 16, {0.0, 1.0, 1});
    CHECK(g.empty_region);
    CHECK(g.caustic.empty());
}

TEST_CASE("egg shells", "[geometry][egg]") {
    const auto n = canonicalize({j(30), j(45), j(55), j(60)});
    const auto egg = egg_surface(n, 128);
    CHECK(egg.v_max > 0);
    REQUIRE(egg.shells_xz.size() == 4);
    const auto xz = caustic_scan(n, Screen::xz, 128);
    // shell 0 is the caustic
    REQUIRE(egg.shells_xz[0].size() == xz.caustic.size());
    for (std::size_t k = 0; k < xz.caustic.size(); ++k) {
        REQUIRE(egg.shells_xz[0][k].size() == xz.caustic[k].size());
        for (std::size_t i = 0; i < xz.caustic[k].size(); ++i) {
            CHECK(egg.shells_xz[0][k][i].u == Catch::Approx(xz.caustic[k][i].u).margin(1e-9));
            CHECK(egg.shells_xz[0][k][i].v == Catch::Approx(xz.caustic[k][i].v).margin(1e-9));
        }
    }
    // nested: every point of shell s+1 lies inside shell s
    for (int s = 0; s + 1 < 4; ++s) {
        const double lower = kEggFractions[s] * egg.v_max;
        for (const auto &line : egg.shells_xz[static_cast<std::size_t>(s) + 1])
            for (const auto &p : line) {
                const double v2 = xz.v2_at(p.u, p.v);
                CHECK(v2 > 0);
                CHECK(std::sqrt(std::max(v2, 0.0)) > lower);
            }
    }
    for (const auto &smp : egg.samples) {
        CHECK(smp.y >= -0.5);
        const double sum = (smp.x + .5) * (smp.x + .5) + (smp.y + .5) * (smp.y + .5) + (smp.z + .5) * (smp.z + .5);
        CHECK(sum == Catch::Approx(30.5 * 30.5 + 45.5 * 45.5 + 55.5 * 55.5 + 60.5 * 60.5));
    }
}
