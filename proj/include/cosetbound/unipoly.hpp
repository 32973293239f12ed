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

#ifndef COSETBOUND_UNIPOLY_HPP
#define COSETBOUND_UNIPOLY_HPP

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ffield.hpp"
#include "rng.hpp"

namespace cosetbound {

/// Dense univariate polynomial over F_p. coeffs[i] is the coefficient of
/// X^i; the top coefficient is nonzero unless the polynomial is zero, in
/// which case the coefficient vector is empty.
class UniPoly {
   public:
    explicit UniPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    UniPoly(const FieldCtx& ctx, std::vector<Elt> coeffs) : ctx_(ctx), c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(const FieldCtx& ctx, Elt v) {
        UniPoly f(ctx);
        if (v != 0) f.c_ = {v};
        return f;
    }

    /// The monomial v * X^k.
    static UniPoly monomial(const FieldCtx& ctx, Elt v, std::size_t k) {
        UniPoly f(ctx);
        if (v != 0) {
            f.c_.assign(k + 1, 0);
            f.c_[k] = v;
        }
        return f;
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const std::vector<Elt>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    Elt coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

    Elt leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

    Elt eval(Elt x) const noexcept {
        Elt acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = ctx_.muladd(c_[i], acc, x);
        return acc;
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ctx_.add(coeff(i), o.coeff(i));
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = ctx_.sub(coeff(i), o.coeff(i));
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly(ctx_);
        std::vector<Elt> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = ctx_.muladd(r[i + j], c_[i], o.c_[j]);
        }
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly scaled(Elt v) const {
        std::vector<Elt> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = ctx_.mul(c_[i], v);
        return UniPoly(ctx_, std::move(r));
    }

    /// Multiply by X^k.
    UniPoly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<Elt> r(c_.size() + k, 0);
        std::copy(c_.begin(), c_.end(), r.begin() + static_cast<long>(k));
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly(ctx_);
        std::vector<Elt> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = ctx_.mul(c_[i], ctx_.from_int(static_cast<long long>(i)));
        return UniPoly(ctx_, std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return scaled(ctx_.inv(leading()));
    }

    bool operator==(const UniPoly& o) const noexcept { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const noexcept { return !(*this == o); }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    FieldCtx ctx_;
    std::vector<Elt> c_;
};

/// Quotient and remainder of a by b (b nonzero). Field coefficients, so this
/// is plain long division.
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw ZeroPolynomial("division by zero polynomial");
    const FieldCtx& ctx = a.ctx();
    if (a.degree() < b.degree()) return {UniPoly(ctx), a};
    std::vector<Elt> rem(a.coeffs());
    std::vector<Elt> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    Elt lead_inv = ctx.inv(b.leading());
    for (std::size_t i = rem.size(); i-- > static_cast<std::size_t>(b.degree());) {
        if (rem[i] == 0) continue;
        Elt q = ctx.mul(rem[i], lead_inv);
        quo[i - static_cast<std::size_t>(b.degree())] = q;
        for (long j = 0; j <= b.degree(); ++j)
            rem[i - static_cast<std::size_t>(b.degree()) + static_cast<std::size_t>(j)] =
                ctx.mulsub(rem[i - static_cast<std::size_t>(b.degree()) + static_cast<std::size_t>(j)], q,
                           b.coeff(static_cast<std::size_t>(j)));
    }
    return {UniPoly(ctx, std::move(quo)), UniPoly(ctx, std::move(rem))};
}

/// Exact division; throws if the remainder is nonzero.
inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw Error("exact_div: division not exact");
    return q;
}

inline bool uni_divides(const UniPoly& d, const UniPoly& a) {
    if (d.is_zero()) return a.is_zero();
    return divrem(a, d).second.is_zero();
}

/// Monic gcd.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^exp mod m, by square-and-multiply.
inline UniPoly powmod(const UniPoly& base, std::uint64_t exp, const UniPoly& m) {
    const FieldCtx& ctx = base.ctx();
    UniPoly result = UniPoly::constant(ctx, 1);
    UniPoly b = divrem(base, m).second;
    while (exp) {
        if (exp & 1) result = divrem(result * b, m).second;
        b = divrem(b * b, m).second;
        exp >>= 1;
    }
    return result;
}

namespace detail {

/// Split a squarefree product of distinct linear factors into roots, by
/// randomized equal-degree splitting. g must be monic, all roots in F_p.
inline void split_linear(const UniPoly& g, SplitMix64& rng, std::set<Elt>& out) {
    const FieldCtx& ctx = g.ctx();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.insert(ctx.mul(ctx.neg(g.coeff(0)), ctx.inv(g.coeff(1))));
        return;
    }
    for (;;) {
        Elt a = static_cast<Elt>(rng.below(ctx.p()));
        UniPoly shift(ctx, {a, 1});  // X + a
        UniPoly w = powmod(shift, (ctx.p() - 1) / 2, g) - UniPoly::constant(ctx, 1);
        UniPoly d = uni_gcd(w, g);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear(d, rng, out);
            split_linear(exact_div(g, d).monic(), rng, out);
            return;
        }
    }
}

}  // namespace detail

/// All roots of f in F_p, each once. Exhaustive scan for small p; for large p
/// the F_p-split part is isolated with gcd(f, X^p - X) and then split by
/// seeded equal-degree splitting, so results are reproducible.
inline std::set<Elt> uni_roots(const UniPoly& f, std::uint64_t seed = 0x5eedULL) {
    if (f.is_zero()) throw ZeroPolynomial("uni_roots of the zero polynomial");
    const FieldCtx& ctx = f.ctx();
    std::set<Elt> out;
    if (f.degree() == 0) return out;
    if (ctx.p() < (1u << 16)) {
        for (Elt x = 0; x < ctx.p(); ++x)
            if (f.eval(x) == 0) out.insert(x);
        return out;
    }
    UniPoly g = f.monic();
    UniPoly xp = powmod(UniPoly(ctx, {0, 1}), ctx.p(), g);
    UniPoly split = uni_gcd(xp - UniPoly(ctx, {0, 1}), g);
    if (split.degree() <= 0) return out;
    if (split.coeff(0) == 0) {
        out.insert(0);
        std::vector<Elt> shifted(split.coeffs().begin() + 1, split.coeffs().end());
        split = UniPoly(ctx, std::move(shifted));
    }
    SplitMix64 rng(mix64(seed ^ 0x726f6f7473ULL));
    detail::split_linear(split.monic(), rng, out);
    return out;
}

}  // namespace cosetbound

#endif  // COSETBOUND_UNIPOLY_HPP
