#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinvol/radical_value.hpp"
#include "spinvol/regge.hpp"
#include "spinvol/sixj.hpp"

namespace spinvol {

enum class IdentityId { orthonormality, racah_sum, triple_sum, biedenharn_elliott };

inline const char *identity_name(IdentityId id) {
    switch (id) {
    case IdentityId::orthonormality:
        return "orthonormality";
    case IdentityId::racah_sum:
        return "racah_sum";
    case IdentityId::triple_sum:
        return "triple_sum";
    case IdentityId::biedenharn_elliott:
        return "biedenharn_elliott";
    }
    return "?";
}

struct IdentityReport {
    IdentityId id = IdentityId::orthonormality;
    std::vector<std::pair<std::string, HalfInt>> parameters;
    bool holds = false;
    /// every term and the right-hand side vanish (parity or triangles)
    bool vacuous = false;
    RadicalValue lhs;
    RadicalValue rhs;
    std::size_t nonzero_terms = 0;
};

/// Thread-safe memo of exact 6j values.
class SixjCache {
  public:
    RadicalValue get(const SixJ &s) {
        if (s.trivial_zero())
            return RadicalValue(0);
        const Key k = key(s);
        {
            std::shared_lock lock(mutex_);
            if (auto it = map_.find(k); it != map_.end())
                return it->second;
        }
        RadicalValue v = sixj_exact(s).exact;
        std::unique_lock lock(mutex_);
        return map_.emplace(k, std::move(v)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return map_.size();
    }

  private:
    using Key = std::array<std::int64_t, 6>;
    struct KeyHash {
        std::size_t operator()(const Key &k) const noexcept {
            std::size_t h = 1469598103934665603ull;
            for (auto v : k)
                h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
            return h;
        }
    };
    static Key key(const SixJ &s) {
        Key k{};
        for (int i = 0; i < 6; ++i)
            k[i] = s.j[i].twice();
        return k;
    }

    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, RadicalValue, KeyHash> map_;
};

inline SixjCache &default_sixj_cache() {
    static SixjCache cache;
    return cache;
}

namespace detail {

/// Labels x congruent to the first pair's p+q spanning the union of the
/// coupling ranges [min |p-q|, max p+q].
inline std::vector<HalfInt> union_range(std::initializer_list<std::pair<HalfInt, HalfInt>> pairs) {
    HalfInt lo = HalfInt::from_twice(std::numeric_limits<std::int32_t>::max());
    HalfInt hi = HalfInt::from_twice(-1);
    const HalfInt parity = pairs.begin()->first + pairs.begin()->second;
    for (const auto &[p, q] : pairs) {
        lo = std::min(lo, abs(p - q));
        hi = std::max(hi, p + q);
    }
    std::vector<HalfInt> out;
    if ((lo - parity).is_integer())
        for (HalfInt x = lo; x <= hi; x += HalfInt::from_int(1))
            out.push_back(x);
    return out;
}

inline RadicalValue dim_factor(HalfInt x) { return RadicalValue(ExactRational(x.dim())); }

inline IdentityReport finish(IdentityReport r) {
    r.holds = radical_eq(r.lhs, r.rhs);
    r.vacuous = r.nonzero_terms == 0 && r.rhs.is_zero();
    return r;
}

inline RadicalValue signed_term(bool negative, RadicalValue v) { return negative ? -v : v; }

} // namespace detail

/// Σ_x (2x+1){a b x; c d y}{c d x; a b y'} = δ_{yy'}/(2y+1) when (a,d,y), (b,c,y) close.
inline IdentityReport check_orthonormality(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt y, HalfInt yp,
                                           SixjCache &cache = default_sixj_cache()) {
    IdentityReport r;
    r.id = IdentityId::orthonormality;
    r.parameters = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"y", y}, {"y'", yp}};
    for (HalfInt x : detail::union_range({{a, b}, {c, d}})) {
        const RadicalValue t1 = cache.get(SixJ{a, b, x, c, d, y});
        if (t1.is_zero())
            continue;
        const RadicalValue t2 = cache.get(SixJ{c, d, x, a, b, yp});
        if (t2.is_zero())
            continue;
        ++r.nonzero_terms;
        r.lhs += detail::dim_factor(x) * t1 * t2;
    }
    if (y == yp && triangle_ok(a, d, y) && triangle_ok(b, c, y))
        r.rhs = RadicalValue(ExactRational(1, y.dim()));
    return detail::finish(std::move(r));
}

/// Σ_x (-1)^(x+y+z)(2x+1){a b x; c d z}{c d x; b a y} = {c a y; d b z}.
inline IdentityReport check_racah_sum(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt y, HalfInt z,
                                      SixjCache &cache = default_sixj_cache()) {
    IdentityReport r;
    r.id = IdentityId::racah_sum;
    r.parameters = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"y", y}, {"z", z}};
    r.rhs = cache.get(SixJ{c, a, y, d, b, z});
    for (HalfInt x : detail::union_range({{a, b}, {c, d}})) {
        if (!(x + y + z).is_integer())
            break; // parity-incompatible: no term can contribute
        const RadicalValue t1 = cache.get(SixJ{a, b, x, c, d, z});
        if (t1.is_zero())
            continue;
        const RadicalValue t2 = cache.get(SixJ{c, d, x, b, a, y});
        if (t2.is_zero())
            continue;
        ++r.nonzero_terms;
        r.lhs += detail::signed_term(phase(x + y + z) < 0, detail::dim_factor(x) * t1 * t2);
    }
    return detail::finish(std::move(r));
}

/// Σ_{x,y} (-1)^(x+y+z)(2x+1)(2y+1){a b x; c d z}{a c y; d b x}{a d z'; b c y}
///   = δ_{zz'}/(2z+1) when (a,d,z), (b,c,z) close.
inline IdentityReport check_triple_sum(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt z, HalfInt zp,
                                       SixjCache &cache = default_sixj_cache()) {
    IdentityReport r;
    r.id = IdentityId::triple_sum;
    r.parameters = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"z", z}, {"z'", zp}};
    const auto ys = detail::union_range({{a, c}, {b, d}});
    for (HalfInt x : detail::union_range({{a, b}, {c, d}})) {
        const RadicalValue t1 = cache.get(SixJ{a, b, x, c, d, z});
        if (t1.is_zero())
            continue;
        for (HalfInt y : ys) {
            if (!(x + y + z).is_integer())
                break;
            const RadicalValue t2 = cache.get(SixJ{a, c, y, d, b, x});
            if (t2.is_zero())
                continue;
            const RadicalValue t3 = cache.get(SixJ{a, d, zp, b, c, y});
            if (t3.is_zero())
                continue;
            ++r.nonzero_terms;
            r.lhs += detail::signed_term(phase(x + y + z) < 0,
                                         detail::dim_factor(x) * detail::dim_factor(y) * t1 * t2 * t3);
        }
    }
    if (z == zp && triangle_ok(a, d, z) && triangle_ok(b, c, z))
        r.rhs = RadicalValue(ExactRational(1, z.dim()));
    return detail::finish(std::move(r));
}

/// Σ_x (-1)^(R+x)(2x+1){a b x; c d p}{c d x; e f q}{e f x; b a r}
///   = {p q r; e a d}{p q r; f b c},  R = a+b+c+d+e+f+p+q+r.
inline IdentityReport check_biedenharn_elliott(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f,
                                               HalfInt p, HalfInt q, HalfInt r_,
                                               SixjCache &cache = default_sixj_cache()) {
    IdentityReport r;
    r.id = IdentityId::biedenharn_elliott;
    r.parameters = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e},
                    {"f", f}, {"p", p}, {"q", q}, {"r", r_}};
    r.rhs = cache.get(SixJ{p, q, r_, e, a, d}) * cache.get(SixJ{p, q, r_, f, b, c});
    const HalfInt R = a + b + c + d + e + f + p + q + r_;
    for (HalfInt x : detail::union_range({{a, b}, {c, d}, {e, f}})) {
        if (!(R + x).is_integer())
            break;
        const RadicalValue t1 = cache.get(SixJ{a, b, x, c, d, p});
        if (t1.is_zero())
            continue;
        const RadicalValue t2 = cache.get(SixJ{c, d, x, e, f, q});
        if (t2.is_zero())
            continue;
        const RadicalValue t3 = cache.get(SixJ{e, f, x, b, a, r_});
        if (t3.is_zero())
            continue;
        ++r.nonzero_terms;
        r.lhs += detail::signed_term(phase(R + x) < 0, detail::dim_factor(x) * t1 * t2 * t3);
    }
    return detail::finish(std::move(r));
}

inline std::size_t identity_arity(IdentityId id) { return id == IdentityId::biedenharn_elliott ? 9 : 6; }

/// Dispatch on id with parameters in the order of the check_* signatures.
inline IdentityReport check_identity(IdentityId id, const std::vector<HalfInt> &v,
                                     SixjCache &cache = default_sixj_cache()) {
    if (v.size() != identity_arity(id))
        throw DomainError(std::string(identity_name(id)) + " takes " + std::to_string(identity_arity(id)) +
                          " spins");
    switch (id) {
    case IdentityId::orthonormality:
        return check_orthonormality(v[0], v[1], v[2], v[3], v[4], v[5], cache);
    case IdentityId::racah_sum:
        return check_racah_sum(v[0], v[1], v[2], v[3], v[4], v[5], cache);
    case IdentityId::triple_sum:
        return check_triple_sum(v[0], v[1], v[2], v[3], v[4], v[5], cache);
    case IdentityId::biedenharn_elliott:
        return check_biedenharn_elliott(v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], cache);
    }
    throw DomainError("unknown identity");
}

/// The triangles that make the right-hand side nonzero.
inline bool identity_admissible(IdentityId id, const std::vector<HalfInt> &v) {
    auto t = [](HalfInt p, HalfInt q, HalfInt r) { return triangle_ok(p, q, r); };
    switch (id) {
    case IdentityId::orthonormality:
    case IdentityId::triple_sum:
        return t(v[0], v[3], v[4]) && t(v[1], v[2], v[4]) && t(v[0], v[3], v[5]) && t(v[1], v[2], v[5]);
    case IdentityId::racah_sum:
        return t(v[2], v[0], v[4]) && t(v[2], v[1], v[5]) && t(v[3], v[0], v[5]) && t(v[3], v[1], v[4]);
    case IdentityId::biedenharn_elliott: {
        const auto &[a, b, c, d, e, f, p, q, r] = std::array<HalfInt, 9>{v[0], v[1], v[2], v[3], v[4],
                                                                         v[5], v[6], v[7], v[8]};
        return t(p, q, r) && t(p, a, d) && t(e, q, d) && t(e, a, r) && t(p, b, c) && t(f, q, c) && t(f, b, r);
    }
    }
    return false;
}

/// Uniform over admissible tuples with every 2j in [0, max_twice], by rejection.
template <class Rng>
std::vector<HalfInt> sample_admissible(IdentityId id, Rng &rng, int max_twice) {
    std::uniform_int_distribution<int> tw(0, max_twice);
    std::vector<HalfInt> v(identity_arity(id));
    for (int attempt = 0; attempt < 10'000'000; ++attempt) {
        for (auto &s : v)
            s = HalfInt::from_twice(tw(rng));
        if (identity_admissible(id, v))
            return v;
    }
    throw DomainError("no admissible parameters found");
}

/// Points a, b, c, d, x, y, z and the seven coupling lines of the network.
struct FanoPlane {
    std::array<char, 7> points{'a', 'b', 'c', 'd', 'x', 'y', 'z'};
    std::array<std::array<char, 3>, 7> lines{{{'a', 'b', 'x'},
                                              {'c', 'd', 'x'},
                                              {'a', 'c', 'y'},
                                              {'b', 'd', 'y'},
                                              {'a', 'd', 'z'},
                                              {'b', 'c', 'z'},
                                              {'x', 'y', 'z'}}};
    std::array<HalfInt, 4> sides{};
    SpinRange x_range, y_range, z_range;

    std::vector<std::array<char, 3>> lines_through(char p) const {
        std::vector<std::array<char, 3>> out;
        for (const auto &l : lines)
            if (std::find(l.begin(), l.end(), p) != l.end())
                out.push_back(l);
        return out;
    }

    /// 7 points, 7 lines of 3, 3 lines per point, one common line per pair.
    bool valid() const {
        for (const auto &l : lines)
            if (l[0] == l[1] || l[1] == l[2] || l[0] == l[2])
                return false;
        for (char p : points)
            if (lines_through(p).size() != 3)
                return false;
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                int common = 0;
                for (const auto &l : lines)
                    if (std::find(l.begin(), l.end(), points[i]) != l.end() &&
                        std::find(l.begin(), l.end(), points[j]) != l.end())
                        ++common;
                if (common != 1)
                    return false;
            }
        return true;
    }
};

inline FanoPlane fano_incidence(const SevenSpinNetwork &n) {
    FanoPlane f;
    f.sides = n.quad.as_array();
    f.x_range = n.x_range;
    f.y_range = n.y_range;
    f.z_range = n.z_range;
    return f;
}

/// Label-level triads of the xz, xy and yz screen symbols.
inline std::array<std::array<std::array<char, 3>, 4>, 3> screen_symbol_triads() {
    // {p0 p1 u; p2 p3 v}: (p0,p1,u), (p0,p3,v), (p2,p1,v), (p2,p3,u)
    const std::array<std::array<char, 6>, 3> sym{{{'a', 'b', 'x', 'c', 'd', 'z'},
                                                  {'a', 'b', 'x', 'd', 'c', 'y'},
                                                  {'a', 'c', 'y', 'b', 'd', 'z'}}};
    std::array<std::array<std::array<char, 3>, 4>, 3> out{};
    for (std::size_t s = 0; s < 3; ++s) {
        const auto &e = sym[s];
        out[s] = {{{e[0], e[1], e[2]}, {e[0], e[4], e[5]}, {e[3], e[1], e[5]}, {e[3], e[4], e[2]}}};
    }
    return out;
}

} // namespace spinvol
