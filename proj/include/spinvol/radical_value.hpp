#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spinvol/rational.hpp"
#include "spinvol/triad.hpp"

namespace spinvol {

/// coeff × Π √Δ²(t) over a set of triads t.
///
/// Kept normalized: the triad list is sorted with no repeats (a repeated
/// triad is folded into coeff as its rational Δ²), and a zero coefficient
/// carries no radicals. Distinct triads may still share a Δ² value, so two
/// normalized forms of one number can differ; compare with radical_eq.
class RadicalValue {
  public:
    RadicalValue() = default;
    RadicalValue(ExactRational coeff) : coeff_(std::move(coeff)) {} // NOLINT(google-explicit-constructor)
    RadicalValue(ExactRational coeff, std::vector<Triad> radicals)
        : coeff_(std::move(coeff)), radicals_(std::move(radicals)) {
        normalize();
    }

    const ExactRational &coeff() const noexcept { return coeff_; }
    const std::vector<Triad> &radicals() const noexcept { return radicals_; }
    bool is_zero() const { return coeff_ == 0; }
    int sign() const { return coeff_.sign(); }

    /// Π Δ²(t) over the radicals.
    ExactRational radicand() const {
        ExactRational r = 1;
        for (const auto &t : radicals_)
            r *= triangle_coeff_sq(t);
        return r;
    }

    /// value² as an exact rational.
    ExactRational square() const { return coeff_ * coeff_ * radicand(); }

    double to_double() const {
        if (is_zero())
            return 0.0;
        ScaledDouble rad = ScaledDouble::from(1.0);
        for (const auto &t : radicals_)
            rad = rad * to_scaled(triangle_coeff_sq(t));
        return (to_scaled(coeff_) * rad.sqrt()).to_double();
    }

    RadicalValue &operator*=(const RadicalValue &o) {
        if (is_zero() || o.is_zero()) {
            *this = RadicalValue{};
            return *this;
        }
        coeff_ *= o.coeff_;
        radicals_.insert(radicals_.end(), o.radicals_.begin(), o.radicals_.end());
        normalize();
        return *this;
    }
    friend RadicalValue operator*(RadicalValue a, const RadicalValue &b) { return a *= b; }

    RadicalValue &operator*=(const ExactRational &q) {
        coeff_ *= q;
        if (coeff_ == 0)
            radicals_.clear();
        return *this;
    }

    /// Addition is only defined when both sides carry the same radicals
    /// (zero is neutral). Anything else is a programming error.
    RadicalValue &operator+=(const RadicalValue &o) {
        if (o.is_zero())
            return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (radicals_ != o.radicals_)
            throw std::logic_error("RadicalValue addition with mismatched radicals: " + str() +
                                   " + " + o.str());
        coeff_ += o.coeff_;
        if (coeff_ == 0)
            radicals_.clear();
        return *this;
    }
    friend RadicalValue operator+(RadicalValue a, const RadicalValue &b) { return a += b; }
    RadicalValue operator-() const {
        RadicalValue r = *this;
        r.coeff_ = -r.coeff_;
        return r;
    }

    /// value = q·√n with n a square-free integer.
    std::pair<ExactRational, BigInt> reduced() const {
        if (is_zero())
            return {ExactRational(0), BigInt(1)};
        FactorialProduct f;
        for (const auto &t : radicals_)
            f *= triangle_coeff_sq_factored(t);
        auto &table = PrimeTable::instance();
        FactorialProduct outside;
        BigInt inside = 1;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::int64_t e = f.exponent(i);
            if (e == 0)
                continue;
            const std::int64_t odd = e & 1;
            if (odd)
                inside *= table[i];
            outside.mul_integer(table[i], (e - odd) / 2);
        }
        return {coeff_ * outside.to_rational(), inside};
    }

    /// "q", "q*sqrt(n)" or "sqrt(n)" with n square-free.
    std::string reduced_str() const {
        const auto [q, n] = reduced();
        if (n == 1)
            return q.str();
        if (q == 1)
            return "sqrt(" + n.str() + ")";
        if (q == -1)
            return "-sqrt(" + n.str() + ")";
        return q.str() + "*sqrt(" + n.str() + ")";
    }

    /// "q" or "q*sqrt(R)" with R the rational radicand.
    std::string str() const {
        if (radicals_.empty())
            return coeff_.str();
        return coeff_.str() + "*sqrt(" + radicand().str() + ")";
    }

    /// Structural equality of normalized forms (stricter than radical_eq).
    friend bool operator==(const RadicalValue &a, const RadicalValue &b) {
        return a.coeff_ == b.coeff_ && a.radicals_ == b.radicals_;
    }

  private:
    void normalize() {
        if (coeff_ == 0) {
            radicals_.clear();
            return;
        }
        std::sort(radicals_.begin(), radicals_.end());
        std::vector<Triad> kept;
        kept.reserve(radicals_.size());
        for (std::size_t i = 0; i < radicals_.size();) {
            if (i + 1 < radicals_.size() && radicals_[i] == radicals_[i + 1]) {
                coeff_ *= triangle_coeff_sq(radicals_[i]);
                i += 2;
            } else {
                kept.push_back(radicals_[i]);
                ++i;
            }
        }
        radicals_ = std::move(kept);
    }

    ExactRational coeff_ = 0;
    std::vector<Triad> radicals_;
};

inline RadicalValue radical_mul(const RadicalValue &u, const RadicalValue &v) { return u * v; }

/// True iff u and v denote the same real number: common radicals cancel,
/// then signs and squares of what is left must agree.
inline bool radical_eq(const RadicalValue &u, const RadicalValue &v) {
    if (u.sign() != v.sign())
        return false;
    if (u.is_zero())
        return true;
    std::vector<Triad> only_u, only_v;
    std::set_difference(u.radicals().begin(), u.radicals().end(), v.radicals().begin(),
                        v.radicals().end(), std::back_inserter(only_u));
    std::set_difference(v.radicals().begin(), v.radicals().end(), u.radicals().begin(),
                        u.radicals().end(), std::back_inserter(only_v));
    ExactRational su = u.coeff() * u.coeff();
    ExactRational sv = v.coeff() * v.coeff();
    for (const auto &t : only_u)
        su *= triangle_coeff_sq(t);
    for (const auto &t : only_v)
        sv *= triangle_coeff_sq(t);
    return su == sv;
}

} // namespace spinvol
