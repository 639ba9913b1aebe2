#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "spinvol/identities.hpp"

using namespace spinvol;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }
HalfInt j(int v) { return HalfInt::from_int(v); }

RadicalValue q(long n, long d = 1) { return RadicalValue(ExactRational(n, d)); }

} // namespace

TEST_CASE("orthonormality sums", "[identities]") {
    auto r = check_orthonormality(h(1), h(1), h(1), h(1), j(0), j(0));
    CHECK(r.holds);
    CHECK(r.lhs == q(1));

    r = check_orthonormality(j(1), j(1), j(1), j(1), j(1), j(2));
    CHECK(r.holds);
    CHECK(r.lhs.is_zero());
    CHECK(r.nonzero_terms > 0);

    r = check_orthonormality(j(1), j(2), j(2), j(3), j(2), j(2));
    CHECK(r.holds);
    CHECK(r.lhs == q(1, 5));

    // y outside the (a,d) triangle: both sides vanish
    r = check_orthonormality(j(1), j(1), j(1), j(1), j(3), j(3));
    CHECK(r.holds);
    CHECK(r.vacuous);
}

TEST_CASE("triple sums", "[identities]") {
    auto r = check_triple_sum(j(1), j(1), j(1), j(1), j(1), j(1));
    CHECK(r.holds);
    CHECK(r.lhs == q(1, 3));

    r = check_triple_sum(j(3), j(4), j(5), j(6), j(4), j(4));
    CHECK(r.holds);
    CHECK(r.lhs == q(1, 9));

    r = check_triple_sum(j(1), j(1), j(1), j(1), j(0), j(2));
    CHECK(r.holds);
    CHECK(r.rhs.is_zero());
}

TEST_CASE("racah sum", "[identities]") {
    auto r = check_racah_sum(h(1), h(1), h(1), h(1), j(0), j(1));
    CHECK(r.holds);
    CHECK_FALSE(r.vacuous);

    r = check_racah_sum(j(2), h(3), h(5), j(1), h(3), j(2));
    CHECK(r.holds);
    CHECK_FALSE(r.rhs.is_zero());

    // parity-incompatible labels
    r = check_racah_sum(j(1), j(1), j(1), j(1), h(1), j(1));
    CHECK(r.vacuous);
    CHECK(r.holds);
}

TEST_CASE("racah sum needs b a in the second symbol", "[identities]") {
    // same sum with {c d x; a b y}: not equal to {c a y; d b z} in general
    auto &cache = default_sixj_cache();
    const HalfInt a = j(1), b = j(2), c = j(2), d = j(1), y = j(1), z = j(2);
    RadicalValue lhs;
    for (HalfInt x = j(1); x <= j(3); x += j(1)) {
        const RadicalValue t =
            RadicalValue(ExactRational(x.dim())) * cache.get(SixJ{a, b, x, c, d, z}) * cache.get(SixJ{c, d, x, a, b, y});
        lhs += phase(x + y + z) < 0 ? -t : t;
    }
    const RadicalValue rhs = cache.get(SixJ{c, a, y, d, b, z});
    CHECK_FALSE(radical_eq(lhs, rhs));
    CHECK(check_racah_sum(a, b, c, d, y, z).holds);
}

TEST_CASE("biedenharn-elliott", "[identities]") {
    auto r = check_biedenharn_elliott(j(1), j(1), j(1), j(1), j(1), j(1), j(1), j(1), j(1));
    CHECK(r.holds);
    CHECK_FALSE(r.vacuous);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto v = sample_admissible(IdentityId::biedenharn_elliott, rng, 5);
        const auto rep = check_identity(IdentityId::biedenharn_elliott, v);
        CHECK_FALSE(rep.rhs.is_zero());
        CHECK(rep.holds);
    }
}

TEST_CASE("admissible sampling", "[identities]") {
    std::mt19937_64 rng(11);
    for (auto id : {IdentityId::orthonormality, IdentityId::racah_sum, IdentityId::triple_sum}) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto v = sample_admissible(id, rng, 6);
            REQUIRE(v.size() == 6);
            for (auto s : v)
                CHECK(s.twice() <= 6);
            CHECK(check_identity(id, v).holds);
        }
    }
    CHECK_THROWS_AS(check_identity(IdentityId::racah_sum, {j(1)}), DomainError);
}

TEST_CASE("small exhaustive sweeps", "[identities]") {
    SixjCache cache;
    int checked = 0;
    for (int ta = 0; ta <= 3; ++ta)
        for (int tb = 0; tb <= 3; ++tb)
            for (int tc = 0; tc <= 3; ++tc)
                for (int td = 0; td <= 3; ++td)
                    for (int t1 = 0; t1 <= 3; ++t1)
                        for (int t2 = 0; t2 <= 3; ++t2) {
                            const auto o = check_orthonormality(h(ta), h(tb), h(tc), h(td), h(t1), h(t2), cache);
                            const auto r = check_racah_sum(h(ta), h(tb), h(tc), h(td), h(t1), h(t2), cache);
                            const auto t = check_triple_sum(h(ta), h(tb), h(tc), h(td), h(t1), h(t2), cache);
                            REQUIRE(o.holds);
                            REQUIRE(r.holds);
                            REQUIRE(t.holds);
                            ++checked;
                        }
    CHECK(checked == 4096);
    CHECK(cache.size() > 0);
}

TEST_CASE("cache is transparent", "[identities]") {
    SixjCache cache;
    const SixJ s = SixJ::from_twice(4, 6, 4, 6, 4, 4);
    CHECK(cache.get(s) == sixj_exact(s).exact);
    CHECK(cache.get(s) == sixj_exact(s).exact);
    CHECK(cache.size() == 1);
    CHECK(cache.get(SixJ::from_twice(2, 2, 6, 2, 2, 2)).is_zero());
}

TEST_CASE("fano incidence", "[identities][fano]") {
    const auto n = canonicalize(QuadSpins{j(30), j(45), j(55), j(60)});
    const FanoPlane f = fano_incidence(n);
    CHECK(f.valid());
    CHECK(f.x_range == n.x_range);

    const auto lines_a = f.lines_through('a');
    const std::set<std::array<char, 3>> through_a(lines_a.begin(), lines_a.end());
    const std::set<std::array<char, 3>> expected{{'a', 'b', 'x'}, {'a', 'c', 'y'}, {'a', 'd', 'z'}};
    CHECK(through_a == expected);

    int pairs = 0;
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t k = i + 1; k < 7; ++k) {
            int common = 0;
            for (const auto &l : f.lines)
                if (std::count(l.begin(), l.end(), f.points[i]) && std::count(l.begin(), l.end(), f.points[k]))
                    ++common;
            CHECK(common == 1);
            ++pairs;
        }
    CHECK(pairs == 21);

    FanoPlane broken = f;
    broken.lines[6] = {'x', 'y', 'a'};
    CHECK_FALSE(broken.valid());
}

TEST_CASE("screen symbols cover the quadrilateral lines", "[identities][fano]") {
    auto sorted = [](std::array<char, 3> t) {
        std::sort(t.begin(), t.end());
        return t;
    };
    std::set<std::array<char, 3>> used;
    for (const auto &sym : screen_symbol_triads())
        for (const auto &t : sym)
            used.insert(sorted(t));
    std::set<std::array<char, 3>> quad;
    FanoPlane f;
    for (const auto &l : f.lines)
        if (sorted(l) != sorted({'x', 'y', 'z'}))
            quad.insert(sorted(l));
    CHECK(used == quad);
    CHECK(used.size() == 6);
}
