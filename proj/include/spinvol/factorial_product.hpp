#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "spinvol/errors.hpp"
#include "spinvol/rational.hpp"

namespace spinvol {

/// Append-only table of primes, grown on demand.
///
/// Entries live in fixed chunks that never move, and the published count is
/// an atomic, so lookups of already-sieved primes take no lock. Growth is
/// serialized by a mutex.
class PrimeTable {
  public:
    static PrimeTable &instance() {
        static PrimeTable table;
        return table;
    }

    /// Number of primes <= n; grows the table when needed.
    std::size_t count_upto(std::uint32_t n) {
        ensure_bound(n);
        const std::size_t count = size_.load(std::memory_order_acquire);
        // Binary search over the chunked storage.
        std::size_t lo = 0, hi = count;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if ((*this)[mid] <= n)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo;
    }

    std::uint32_t operator[](std::size_t i) const {
        auto [chunk, offset] = locate(i);
        return chunks_[chunk][offset];
    }

    std::size_t size() const { return size_.load(std::memory_order_acquire); }

  private:
    static constexpr std::size_t kFirstChunk = 1024;
    static constexpr std::size_t kChunks = 40;

    PrimeTable() = default;

    static std::pair<std::size_t, std::size_t> locate(std::size_t i) {
        // chunk k holds kFirstChunk * 2^k entries, starting at kFirstChunk*(2^k - 1)
        std::size_t k = 0;
        std::size_t start = 0;
        std::size_t len = kFirstChunk;
        while (i >= start + len) {
            start += len;
            len *= 2;
            ++k;
        }
        return {k, i - start};
    }

    void ensure_bound(std::uint32_t n) {
        if (bound_.load(std::memory_order_acquire) >= n)
            return;
        std::lock_guard lock(grow_mutex_);
        const std::uint32_t have = bound_.load(std::memory_order_relaxed);
        if (have >= n)
            return;
        std::uint32_t target = std::max<std::uint32_t>(n, 2 * have + 64);
        std::vector<bool> composite(target + 1, false);
        std::size_t count = size_.load(std::memory_order_relaxed);
        for (std::uint32_t p = 2; p <= target; ++p) {
            if (composite[p])
                continue;
            for (std::uint64_t q = std::uint64_t{p} * p; q <= target; q += p)
                composite[q] = true;
            if (p > have)
                push(count++, p);
        }
        size_.store(count, std::memory_order_release);
        bound_.store(target, std::memory_order_release);
    }

    void push(std::size_t i, std::uint32_t p) {
        auto [chunk, offset] = locate(i);
        if (!chunks_[chunk])
            chunks_[chunk] = std::make_unique<std::uint32_t[]>(kFirstChunk << chunk);
        chunks_[chunk][offset] = p;
    }

    std::array<std::unique_ptr<std::uint32_t[]>, kChunks> chunks_{};
    std::atomic<std::size_t> size_{0};
    std::atomic<std::uint32_t> bound_{1};
    std::mutex grow_mutex_;
};

/// Exponent of prime p in n! (Legendre's formula).
constexpr std::int64_t legendre_exponent(std::uint64_t n, std::uint64_t p) noexcept {
    std::int64_t e = 0;
    while (n >= p) {
        n /= p;
        e += static_cast<std::int64_t>(n);
    }
    return e;
}

/// A ratio of factorial products held as prime exponents, value = Π p_i^e_i.
/// Index i refers to the i-th prime of PrimeTable.
class FactorialProduct {
  public:
    FactorialProduct() = default;

    static FactorialProduct factorial(std::uint64_t n) {
        FactorialProduct f;
        f.mul_factorial(n);
        return f;
    }

    FactorialProduct &mul_factorial(std::uint64_t n, std::int64_t power = 1) {
        if (n < 2 || power == 0)
            return *this;
        auto &table = PrimeTable::instance();
        const std::size_t np = table.count_upto(static_cast<std::uint32_t>(n));
        if (exps_.size() < np)
            exps_.resize(np, 0);
        for (std::size_t i = 0; i < np; ++i)
            exps_[i] += power * legendre_exponent(n, table[i]);
        return *this;
    }
    FactorialProduct &div_factorial(std::uint64_t n) { return mul_factorial(n, -1); }

    /// Multiplies by a small positive integer by trial division.
    FactorialProduct &mul_integer(std::uint64_t n, std::int64_t power = 1) {
        if (n == 0)
            throw DomainError("FactorialProduct cannot represent zero");
        auto &table = PrimeTable::instance();
        table.count_upto(static_cast<std::uint32_t>(std::min<std::uint64_t>(n, 1u << 30)));
        for (std::size_t i = 0; n > 1; ++i) {
            const std::uint64_t p = table[i];
            if (p * p > n) {
                const std::size_t idx = index_of_prime(n);
                bump(idx, power);
                break;
            }
            while (n % p == 0) {
                n /= p;
                bump(i, power);
            }
        }
        return *this;
    }

    FactorialProduct &operator*=(const FactorialProduct &o) {
        if (exps_.size() < o.exps_.size())
            exps_.resize(o.exps_.size(), 0);
        for (std::size_t i = 0; i < o.exps_.size(); ++i)
            exps_[i] += o.exps_[i];
        return *this;
    }
    FactorialProduct &operator/=(const FactorialProduct &o) {
        if (exps_.size() < o.exps_.size())
            exps_.resize(o.exps_.size(), 0);
        for (std::size_t i = 0; i < o.exps_.size(); ++i)
            exps_[i] -= o.exps_[i];
        return *this;
    }
    friend FactorialProduct operator*(FactorialProduct a, const FactorialProduct &b) { return a *= b; }
    friend FactorialProduct operator/(FactorialProduct a, const FactorialProduct &b) { return a /= b; }

    std::int64_t exponent(std::size_t prime_index) const {
        return prime_index < exps_.size() ? exps_[prime_index] : 0;
    }
    std::size_t size() const { return exps_.size(); }

    /// Elementwise minimum of exponents; the largest common factor of a set.
    static FactorialProduct elementwise_min(const FactorialProduct &a, const FactorialProduct &b) {
        FactorialProduct r;
        r.exps_.resize(std::max(a.exps_.size(), b.exps_.size()), 0);
        for (std::size_t i = 0; i < r.exps_.size(); ++i)
            r.exps_[i] = std::min(a.exponent(i), b.exponent(i));
        return r;
    }

    bool is_integer() const {
        return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t e) { return e >= 0; });
    }

    /// Product of p^e over positive exponents (numerator) or over negated
    /// negative exponents (denominator).
    BigInt numerator() const { return power_product(+1); }
    BigInt denominator() const { return power_product(-1); }

    ExactRational to_rational() const { return ExactRational(numerator(), denominator()); }

    ScaledDouble to_scaled() const {
        auto &table = PrimeTable::instance();
        long double log2v = 0.0L;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] != 0)
                log2v += static_cast<long double>(exps_[i]) * std::log2(static_cast<long double>(table[i]));
        const auto e = static_cast<std::int64_t>(std::floor(log2v));
        ScaledDouble s{static_cast<double>(std::exp2(log2v - static_cast<long double>(e))), e};
        return s.normalize();
    }

    friend bool operator==(const FactorialProduct &a, const FactorialProduct &b) {
        const std::size_t n = std::max(a.exps_.size(), b.exps_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (a.exponent(i) != b.exponent(i))
                return false;
        return true;
    }

  private:
    void bump(std::size_t idx, std::int64_t power) {
        if (exps_.size() <= idx)
            exps_.resize(idx + 1, 0);
        exps_[idx] += power;
    }

    static std::size_t index_of_prime(std::uint64_t p) {
        auto &table = PrimeTable::instance();
        return table.count_upto(static_cast<std::uint32_t>(p)) - 1;
    }

    BigInt power_product(int which) const {
        auto &table = PrimeTable::instance();
        BigInt acc = 1;
        std::uint64_t small = 1;
        for (std::size_t i = 0; i < exps_.size(); ++i) {
            const std::int64_t e = which * exps_[i];
            if (e <= 0)
                continue;
            const std::uint64_t p = table[i];
            for (std::int64_t k = 0; k < e; ++k) {
                if (small > (std::uint64_t{1} << 63) / p) {
                    acc *= small;
                    small = 1;
                }
                small *= p;
            }
        }
        acc *= small;
        return acc;
    }

    std::vector<std::int64_t> exps_;
};

} // namespace spinvol
