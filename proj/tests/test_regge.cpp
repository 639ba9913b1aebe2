#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spinvol/regge.hpp"
#include "spinvol/sixj.hpp"
#include "regge_checks.hpp"

using namespace spinvol;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }
HalfInt j(int v) { return HalfInt::from_int(v); }

} // namespace

TEST_CASE("canonicalize examples", "[regge]") {
    SECTION("(30,45,55,60) is canonical") {
        const auto n = canonicalize({j(30), j(45), j(55), j(60)});
        CHECK(n.quad == QuadSpins{j(30), j(45), j(55), j(60)});
        CHECK_FALSE(n.transform.regge);
        CHECK(n.x_range == SpinRange{j(15), j(75)});
        CHECK(n.y_range == SpinRange{j(25), j(85)});
        CHECK(n.z_range == SpinRange{j(30), j(90)});
        CHECK(n.x_range.size() == 61);
        CHECK(n.y_range.size() == 61);
        CHECK(n.z_range.size() == 61);
    }
    SECTION("(1,1,1,2) goes to its Regge image") {
        const auto n = canonicalize({j(1), j(1), j(1), j(2)});
        CHECK(n.transform.regge);
        CHECK(n.quad == QuadSpins{h(1), h(3), h(3), h(3)});
        CHECK(n.x_range.size() == 2);
        CHECK(n.x_range == SpinRange{j(1), j(2)});
    }
    SECTION("(100,100,100,100) is self-canonical") {
        const auto n = canonicalize({j(100), j(100), j(100), j(100)});
        CHECK_FALSE(n.transform.regge);
        CHECK(n.x_range == SpinRange{j(0), j(200)});
        CHECK(n.x_range.size() == 201);
        CHECK(n.y_range == n.x_range);
        CHECK(n.z_range == n.x_range);
    }
    SECTION("unsorted input is sorted") {
        const auto n = canonicalize({j(60), j(30), j(55), j(45)});
        CHECK(n.quad == QuadSpins{j(30), j(45), j(55), j(60)});
        CHECK(n.transform.perm == std::array<int, 4>{1, 3, 2, 0});
    }
    SECTION("closure violations") {
        CHECK_THROWS_AS(canonicalize({j(1), j(1), j(1), j(5)}), DomainError);
        CHECK_THROWS_AS(canonicalize({h(1), j(1), j(1), j(1)}), DomainError);
    }
}

TEST_CASE("Regge map preserves 6j values", "[regge][property]") {
    // {a b x; c d z} = {s-a s-b x; s-c s-d z}
    const auto v1 = sixj_exact(SixJ{j(1), j(1), j(1), j(1), j(2), j(2)}).exact;
    const auto v2 = sixj_exact(SixJ{h(3), h(3), j(1), h(3), h(1), j(2)}).exact;
    CHECK(radical_eq(v1, v2));
    const auto failures = test_support::regge_value_failures(4);
    CHECK(failures.empty());
}

TEST_CASE("canonical form is idempotent and has 2a+1 wide ranges", "[regge][property]") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> d(0, 80);
    int done = 0;
    while (done < 1000) {
        const QuadSpins q{h(d(rng)), h(d(rng)), h(d(rng)), h(d(rng))};
        if (!q.closed())
            continue;
        ++done;
        const auto n = canonicalize(q);
        const auto n2 = canonicalize(n.quad);
        CHECK(n2.quad == n.quad);
        CHECK_FALSE(n2.transform.regge);
        const auto w = n.quad.a.dim();
        CHECK(n.x_range.size() == w);
        CHECK(n.y_range.size() == w);
        CHECK(n.z_range.size() == w);
        CHECK(n.quad.a + n.quad.d <= n.quad.b + n.quad.c);
    }
}

TEST_CASE("screen symbols", "[regge]") {
    const auto n = canonicalize({j(30), j(45), j(55), j(60)});
    const auto s = screen_symbols(n);
    CHECK(s[0].str() == "{30 45 x; 55 60 z}");
    CHECK(screen_symbol(canonicalize({j(100), j(110), j(130), j(140)}), Screen::xy).str() ==
          "{100 110 x; 140 130 y}");
    CHECK(screen_symbol(canonicalize({j(100), j(100), j(100), j(100)}), Screen::yz).str() ==
          "{100 100 y; 100 100 z}");
    // every screen symbol is admissible throughout its rectangle corners' interior lines
    for (const auto &t : s) {
        CHECK(t.u_range.size() == 61);
        CHECK(t.v_range.size() == 61);
        const auto mid = t.at(t.u_range.at(30), t.v_range.at(30));
        CHECK_FALSE(mid.trivial_zero());
    }
}
