#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "spinvol/errors.hpp"
#include "spinvol/factorial_product.hpp"
#include "spinvol/half_int.hpp"

namespace spinvol {

/// |a-b| <= c <= a+b with a+b+c integral.
constexpr bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) noexcept {
    if (a.twice() < 0 || b.twice() < 0 || c.twice() < 0)
        return false;
    const std::int64_t s = a.twice() + b.twice() + c.twice();
    if (s % 2 != 0)
        return false;
    return c >= abs(a - b) && c <= a + b;
}

/// Unordered triple of spins, stored sorted so equal triads compare equal.
class Triad {
  public:
    constexpr Triad(HalfInt a, HalfInt b, HalfInt c) noexcept : s_{a, b, c} {
        std::sort(s_.begin(), s_.end());
    }

    constexpr const std::array<HalfInt, 3> &spins() const noexcept { return s_; }
    constexpr bool ok() const noexcept { return triangle_ok(s_[0], s_[1], s_[2]); }

    friend constexpr auto operator<=>(const Triad &, const Triad &) = default;

    std::string str() const {
        return "(" + s_[0].str() + "," + s_[1].str() + "," + s_[2].str() + ")";
    }

  private:
    std::array<HalfInt, 3> s_;
};

/// Δ²(a,b,c) = (a+b-c)!(a-b+c)!(-a+b+c)! / (a+b+c+1)! in factored form.
inline FactorialProduct triangle_coeff_sq_factored(const Triad &t) {
    if (!t.ok())
        throw DomainError("triangle condition violated for " + t.str());
    const auto &[a, b, c] = t.spins();
    FactorialProduct f;
    f.mul_factorial(static_cast<std::uint64_t>((a + b - c).as_int()));
    f.mul_factorial(static_cast<std::uint64_t>((a - b + c).as_int()));
    f.mul_factorial(static_cast<std::uint64_t>((b + c - a).as_int()));
    f.div_factorial(static_cast<std::uint64_t>((a + b + c).as_int() + 1));
    return f;
}

inline ExactRational triangle_coeff_sq(const Triad &t) {
    return triangle_coeff_sq_factored(t).to_rational();
}

} // namespace spinvol
