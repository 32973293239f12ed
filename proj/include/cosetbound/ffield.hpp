/*
   Copyright 2026 The cosetbound authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef COSETBOUND_FFIELD_HPP
#define COSETBOUND_FFIELD_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cosetbound {

/// Canonical residue in [0, p). All arithmetic goes through FieldCtx.
using Elt = std::uint32_t;

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin. The fixed base set decides primality exactly
/// for every n < 3.3e24, far beyond anything this library accepts.
inline bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Trial-division factorization; fine for the < 2^31 moduli handled here.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2) ? 1 : 2) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) {
                n /= q;
                ++e;
            }
            out.emplace_back(q, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// All divisors of n, ascending.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [q, e] : factorize(n)) {
        std::size_t sz = out.size();
        std::uint64_t pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= q;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Smallest prime p > floor with p ≡ residue (mod modulus).
inline std::uint64_t find_prime_congruent(std::uint64_t floor, std::uint64_t modulus, std::uint64_t residue) {
    std::uint64_t c = floor + 1;
    std::uint64_t r = c % modulus;
    c += (residue >= r) ? (residue - r) : (modulus - r + residue);
    while (!is_prime_u64(c)) c += modulus;
    return c;
}

/// The prime field F_p. Stores the modulus and a Barrett constant so that the
/// hot reduction path needs no division. p must be an odd prime below 2^31,
/// keeping every product of canonical residues inside 62 bits.
class FieldCtx {
   public:
    explicit FieldCtx(std::uint32_t p) : p_(p) {
        if (p < 3 || p >= (1u << 31) || (p & 1) == 0 || !is_prime_u64(p))
            throw NotPrime("modulus " + std::to_string(p) + " is not an odd prime below 2^31");
        magic_ = ~std::uint64_t(0) / p;  // == floor(2^64 / p) for odd p
    }

    std::uint32_t p() const noexcept { return p_; }

    /// Reduce any 64-bit value; exact for x < 2^63 + p (covers all uses).
    Elt reduce(std::uint64_t x) const noexcept {
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * magic_) >> 64);
        std::uint64_t r = x - q * p_;
        if (r >= p_) r -= p_;
        return static_cast<Elt>(r);
    }

    Elt add(Elt a, Elt b) const noexcept {
        std::uint32_t s = a + b;
        if (s >= p_) s -= p_;
        return s;
    }

    Elt sub(Elt a, Elt b) const noexcept { return a >= b ? a - b : a + p_ - b; }

    Elt neg(Elt a) const noexcept { return a == 0 ? 0 : p_ - a; }

    Elt mul(Elt a, Elt b) const noexcept { return reduce(static_cast<std::uint64_t>(a) * b); }

    /// a + b*c in one reduction.
    Elt muladd(Elt a, Elt b, Elt c) const noexcept { return reduce(static_cast<std::uint64_t>(b) * c + a); }

    /// a - b*c.
    Elt mulsub(Elt a, Elt b, Elt c) const noexcept { return sub(a, mul(b, c)); }

    Elt pow(Elt base, std::uint64_t exp) const noexcept {
        Elt r = 1;
        Elt b = base;
        while (exp) {
            if (exp & 1) r = mul(r, b);
            b = mul(b, b);
            exp >>= 1;
        }
        return r;
    }

    Elt inv(Elt a) const {
        if (a == 0) throw ZeroElement("inverse of zero");
        return pow(a, p_ - 2);
    }

    /// Canonical residue of a signed integer.
    Elt from_int(long long v) const noexcept {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += p_;
        return static_cast<Elt>(m);
    }

    bool operator==(const FieldCtx& o) const noexcept { return p_ == o.p_; }
    bool operator!=(const FieldCtx& o) const noexcept { return p_ != o.p_; }

   private:
    std::uint32_t p_;
    std::uint64_t magic_;
};

/// Smallest primitive root of F_p.
inline Elt smallest_primitive_root(const FieldCtx& ctx) {
    std::uint64_t pm1 = ctx.p() - 1;
    auto fac = factorize(pm1);
    for (Elt g = 2; g < ctx.p(); ++g) {
        bool ok = true;
        for (const auto& [q, e] : fac) {
            (void)e;
            if (ctx.pow(g, pm1 / q) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("no primitive root found (unreachable for prime p)");
}

/// Multiplicative subgroup of F_p^* of order t | p-1, with its members
/// enumerated and sorted. Immutable after construction.
struct Subgroup {
    FieldCtx ctx;
    std::uint32_t t;
    Elt gen;
    std::vector<Elt> elements;

    bool contains(Elt x) const noexcept { return x != 0 && ctx.pow(x, t) == 1; }
};

/// The unique subgroup of order t. Generator choice is deterministic: the
/// smallest primitive root raised to (p-1)/t.
inline Subgroup subgroup_of_order(const FieldCtx& ctx, std::uint32_t t) {
    std::uint64_t pm1 = ctx.p() - 1;
    if (t == 0 || pm1 % t != 0)
        throw NotDivisor("subgroup order " + std::to_string(t) + " does not divide p-1 = " + std::to_string(pm1));
    Elt r = smallest_primitive_root(ctx);
    Elt gen = ctx.pow(r, pm1 / t);
    std::vector<Elt> elems;
    elems.reserve(t);
    Elt cur = 1;
    for (std::uint32_t i = 0; i < t; ++i) {
        elems.push_back(cur);
        cur = ctx.mul(cur, gen);
    }
    std::sort(elems.begin(), elems.end());
    return Subgroup{ctx, t, gen, std::move(elems)};
}

/// Coset rep*G. Two cosets are equal iff rep/rep' is a t-th power of a
/// generator, i.e. (rep*rep'^-1)^t = 1.
struct Coset {
    Elt rep;
    Subgroup sub;

    /// rep^t, constant on the coset. This is the gamma that parameterizes
    /// the coset in every certificate construction.
    Elt gamma() const noexcept { return sub.ctx.pow(rep, sub.t); }

    std::vector<Elt> elements() const {
        std::vector<Elt> out;
        out.reserve(sub.t);
        for (Elt g : sub.elements) out.push_back(sub.ctx.mul(rep, g));
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline Coset make_coset(Elt rep, const Subgroup& sub) {
    if (rep == 0) throw ZeroElement("coset representative must be nonzero");
    return Coset{rep, sub};
}

inline bool coset_contains(const Coset& c, Elt x) {
    if (x == 0) throw ZeroElement("coset membership of zero");
    const FieldCtx& ctx = c.sub.ctx;
    return ctx.pow(ctx.mul(x, ctx.inv(c.rep)), c.sub.t) == 1;
}

inline bool coset_equal(const Coset& a, const Coset& b) {
    const FieldCtx& ctx = a.sub.ctx;
    return a.sub.t == b.sub.t && ctx.pow(ctx.mul(a.rep, ctx.inv(b.rep)), a.sub.t) == 1;
}

namespace detail {

/// Baby-step/giant-step discrete logarithm of a w.r.t. base (assumed of
/// order `order`). Returns k with base^k = a.
inline std::uint64_t bsgs_dlog(const FieldCtx& ctx, Elt base, Elt a, std::uint64_t order) {
    std::uint64_t m = 1;
    while (m * m < order) ++m;
    std::unordered_map<Elt, std::uint64_t> table;
    table.reserve(m * 2);
    Elt cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        table.emplace(cur, j);  // keeps the smallest j per residue
        cur = ctx.mul(cur, base);
    }
    Elt giant = ctx.inv(cur);  // base^-m
    Elt gamma = a;
    for (std::uint64_t i = 0; i <= m; ++i) {
        auto it = table.find(gamma);
        if (it != table.end()) return i * m + it->second;
        gamma = ctx.mul(gamma, giant);
    }
    throw Error("discrete log not found (base is not a generator?)");
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Inverse of a modulo m (gcd(a, m) = 1).
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw Error("invmod: arguments not coprime");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<std::uint64_t>(t);
}

}  // namespace detail

/// Some mu with mu^n = a, or nullopt if a is not an n-th power. The choice is
/// deterministic: the smallest such mu. Solved by BSGS discrete log w.r.t.
/// the smallest primitive root, then a linear congruence in the exponent.
inline std::optional<Elt> nth_root(const FieldCtx& ctx, Elt a, std::uint64_t n) {
    if (a == 0) throw ZeroElement("nth_root of zero");
    if (n == 0) throw Error("nth_root: n must be positive");
    if (a == 1) return 1;  // 1 is always the smallest root of unity
    std::uint64_t pm1 = ctx.p() - 1;
    if (n % pm1 == 0) return std::nullopt;  // mu^n = 1 for every mu, but a != 1
    Elt r = smallest_primitive_root(ctx);
    std::uint64_t target = detail::bsgs_dlog(ctx, r, a, pm1);
    std::uint64_t g = detail::gcd_u64(n % pm1, pm1);
    if (target % g != 0) return std::nullopt;
    std::uint64_t m = pm1 / g;
    std::uint64_t z0 = (target / g) % m;
    std::uint64_t nred = ((n % pm1) / g) % m;
    z0 = detail::mulmod_u64(z0, detail::invmod_u64(nred, m), m);
    Elt best = 0;
    bool found = false;
    for (std::uint64_t i = 0; i < g; ++i) {
        Elt cand = ctx.pow(r, z0 + i * m);
        if (!found || cand < best) {
            best = cand;
            found = true;
        }
    }
    return best;
}

}  // namespace cosetbound

#endif  // COSETBOUND_FFIELD_HPP
