#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "spinvol/errors.hpp"

namespace spinvol {

/// Angular momentum quantum number j stored as the integer 2j.
///
/// Sums and differences keep the parity of `twice()` exact, so the
/// integer/half-integer character of any derived label is never lost to
/// floating point.
class HalfInt {
  public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(std::int64_t twice) noexcept {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }
    static constexpr HalfInt from_int(std::int64_t j) noexcept { return from_twice(2 * j); }

    constexpr std::int64_t twice() const noexcept { return twice_; }
    constexpr bool is_integer() const noexcept { return (twice_ & 1) == 0; }
    constexpr double to_double() const noexcept { return 0.5 * static_cast<double>(twice_); }
    /// 2j+1, the multiplicity of the spin.
    constexpr std::int64_t dim() const noexcept { return twice_ + 1; }

    /// Integer value; only meaningful when is_integer().
    constexpr std::int64_t as_int() const noexcept { return twice_ / 2; }

    constexpr HalfInt operator-() const noexcept { return from_twice(-twice_); }
    constexpr HalfInt &operator+=(HalfInt o) noexcept {
        twice_ += o.twice_;
        return *this;
    }
    constexpr HalfInt &operator-=(HalfInt o) noexcept {
        twice_ -= o.twice_;
        return *this;
    }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) noexcept { return a += b; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) noexcept { return a -= b; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const {
        if (is_integer())
            return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

    friend std::ostream &operator<<(std::ostream &os, HalfInt h) { return os << h.str(); }

  private:
    std::int64_t twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) noexcept { return h.twice() < 0 ? -h : h; }
/// (-1)^k for an integer-valued HalfInt k.
constexpr int phase(HalfInt k) noexcept { return (k.as_int() % 2 == 0) ? 1 : -1; }

namespace detail {

inline std::optional<std::int64_t> parse_i64(std::string_view s) {
    std::int64_t v = 0;
    if (s.empty())
        return std::nullopt;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace detail

/// Parses "3", "3/2", "1.5" (only .0 and .5 fractions). When `twice_form` is
/// set the text is read as the integer 2j.
inline HalfInt parse_spin(std::string_view text, bool twice_form = false) {
    auto fail = [&]() -> HalfInt {
        throw ParseError("malformed spin '" + std::string(text) + "'");
    };
    if (twice_form) {
        auto v = detail::parse_i64(text);
        if (!v)
            return fail();
        return HalfInt::from_twice(*v);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = detail::parse_i64(text.substr(0, slash));
        auto den = detail::parse_i64(text.substr(slash + 1));
        if (!num || !den)
            return fail();
        if (*den == 1)
            return HalfInt::from_int(*num);
        if (*den == 2)
            return HalfInt::from_twice(*num);
        return fail();
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = detail::parse_i64(text.substr(0, dot));
        std::string_view frac = text.substr(dot + 1);
        if (!whole || frac.empty() || text.front() == '-')
            return fail();
        while (frac.size() > 1 && frac.back() == '0')
            frac.remove_suffix(1);
        if (frac == "0")
            return HalfInt::from_int(*whole);
        if (frac == "5")
            return HalfInt::from_twice(2 * *whole + 1);
        return fail();
    }
    auto v = detail::parse_i64(text);
    if (!v)
        return fail();
    return HalfInt::from_int(*v);
}

/// Inclusive range of spin labels stepping by one.
struct SpinRange {
    HalfInt lo;
    HalfInt hi;

    constexpr bool empty() const noexcept { return hi < lo; }
    constexpr std::int64_t size() const noexcept {
        return empty() ? 0 : (hi.twice() - lo.twice()) / 2 + 1;
    }
    constexpr HalfInt at(std::int64_t k) const noexcept {
        return lo + HalfInt::from_int(k);
    }
    constexpr bool contains(HalfInt j) const noexcept {
        return !(j < lo) && !(hi < j) && ((j.twice() - lo.twice()) % 2 == 0);
    }

    template <typename F> void for_each(F &&f) const {
        for (auto j = lo; j <= hi; j += HalfInt::from_int(1))
            f(j);
    }

    friend constexpr bool operator==(const SpinRange &, const SpinRange &) = default;
};

} // namespace spinvol

template <> struct std::hash<spinvol::HalfInt> {
    std::size_t operator()(spinvol::HalfInt h) const noexcept {
        return std::hash<std::int64_t>{}(h.twice());
    }
};
