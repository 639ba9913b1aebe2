#pragma once

#include <algorithm>
#include <array>
#include <string>

#include "spinvol/errors.hpp"
#include "spinvol/half_int.hpp"
#include "spinvol/sixj.hpp"

namespace spinvol {

/// Four quadrilateral sides a, b, c, d.
struct QuadSpins {
    HalfInt a, b, c, d;

    std::array<HalfInt, 4> as_array() const { return {a, b, c, d}; }
    static QuadSpins from_array(const std::array<HalfInt, 4> &q) { return {q[0], q[1], q[2], q[3]}; }

    /// (a+b+c+d)/2
    HalfInt semi_perimeter() const { return HalfInt::from_twice((a + b + c + d).twice() / 2); }

    bool closed() const {
        const auto q = as_array();
        for (auto j : q)
            if (j.twice() < 0)
                return false;
        if (!(a + b + c + d).is_integer())
            return false;
        const HalfInt largest = *std::max_element(q.begin(), q.end());
        return largest + largest <= a + b + c + d;
    }

    std::string str() const {
        return "(" + a.str() + "," + b.str() + "," + c.str() + "," + d.str() + ")";
    }

    friend bool operator==(const QuadSpins &, const QuadSpins &) = default;
};

/// How a quadruple was mapped to canonical form:
/// canonical[i] = regge ? s - original[perm[i]] : original[perm[i]].
struct CanonicalTransform {
    bool regge = false;
    std::array<int, 4> perm{0, 1, 2, 3};
};

struct SevenSpinNetwork {
    QuadSpins quad;
    SpinRange x_range; ///< x = j_ab = j_cd
    SpinRange y_range; ///< y = j_ac = j_bd
    SpinRange z_range; ///< z = j_ad = j_bc
    CanonicalTransform transform;
};

/// Canonicalization left ranges of unequal width; carries both quadruples.
class NonCanonicalResidual : public std::logic_error {
  public:
    NonCanonicalResidual(QuadSpins original, QuadSpins canonical)
        : std::logic_error("non-canonical residual: " + original.str() + " -> " + canonical.str()),
          original_(original), canonical_(canonical) {}
    const QuadSpins &original() const noexcept { return original_; }
    const QuadSpins &canonical() const noexcept { return canonical_; }

  private:
    QuadSpins original_, canonical_;
};

/// Diagonal range for a coupling (p,q|r,s): j_pq = j_rs.
inline SpinRange coupling_range(HalfInt p, HalfInt q, HalfInt r, HalfInt s) {
    return {std::max(abs(p - q), abs(r - s)), std::min(p + q, r + s)};
}

inline QuadSpins regge_image(const QuadSpins &q) {
    const HalfInt s = q.semi_perimeter();
    return {s - q.a, s - q.b, s - q.c, s - q.d};
}

inline SevenSpinNetwork canonicalize(const QuadSpins &q) {
    if (!q.closed())
        throw DomainError("quadrilateral does not close: " + q.str());
    auto sorted_with_perm = [](const std::array<HalfInt, 4> &v) {
        std::array<int, 4> perm{0, 1, 2, 3};
        std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) { return v[i] < v[j]; });
        std::array<HalfInt, 4> out{};
        for (int i = 0; i < 4; ++i)
            out[i] = v[perm[i]];
        return std::pair{out, perm};
    };
    const auto [plain, plain_perm] = sorted_with_perm(q.as_array());
    const auto [image, image_perm] = sorted_with_perm(regge_image(q).as_array());

    const bool use_regge = image[0] < plain[0] || (image[0] == plain[0] && image < plain);
    SevenSpinNetwork n;
    n.quad = QuadSpins::from_array(use_regge ? image : plain);
    n.transform = {use_regge, use_regge ? image_perm : plain_perm};

    const auto &[a, b, c, d] = n.quad;
    n.x_range = coupling_range(a, b, c, d);
    n.y_range = coupling_range(a, c, b, d);
    n.z_range = coupling_range(a, d, b, c);
    const std::int64_t width = a.dim();
    if (n.x_range != SpinRange{b - a, b + a} || n.y_range != SpinRange{c - a, c + a} ||
        n.z_range != SpinRange{d - a, d + a} || n.x_range.size() != width)
        throw NonCanonicalResidual(q, n.quad);
    return n;
}

enum class Screen { xz, xy, yz };

inline const char *screen_name(Screen s) {
    switch (s) {
    case Screen::xz:
        return "xz";
    case Screen::xy:
        return "xy";
    case Screen::yz:
        return "yz";
    }
    return "?";
}

/// {p0 p1 u; p2 p3 v} with the diagonals u (horizontal) and v (vertical) free.
struct ScreenTemplate {
    Screen screen = Screen::xz;
    std::array<HalfInt, 4> fixed{};
    char u_name = 'x';
    char v_name = 'z';
    SpinRange u_range;
    SpinRange v_range;

    SixJ at(HalfInt u, HalfInt v) const { return SixJ{fixed[0], fixed[1], u, fixed[2], fixed[3], v}; }

    std::string str() const {
        return "{" + fixed[0].str() + " " + fixed[1].str() + " " + u_name + "; " + fixed[2].str() + " " +
               fixed[3].str() + " " + v_name + "}";
    }
};

/// xz, xy and yz screen symbols: {a b x; c d z}, {a b x; d c y}, {a c y; b d z}.
inline std::array<ScreenTemplate, 3> screen_symbols(const SevenSpinNetwork &n) {
    const auto &[a, b, c, d] = n.quad;
    return {ScreenTemplate{Screen::xz, {a, b, c, d}, 'x', 'z', n.x_range, n.z_range},
            ScreenTemplate{Screen::xy, {a, b, d, c}, 'x', 'y', n.x_range, n.y_range},
            ScreenTemplate{Screen::yz, {a, c, b, d}, 'y', 'z', n.y_range, n.z_range}};
}

inline ScreenTemplate screen_symbol(const SevenSpinNetwork &n, Screen s) {
    return screen_symbols(n)[static_cast<std::size_t>(s)];
}

} // namespace spinvol
