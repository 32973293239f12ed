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

#ifndef COSETBOUND_BIPOLY_HPP
#define COSETBOUND_BIPOLY_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ffield.hpp"
#include "unipoly.hpp"

namespace cosetbound {

/// Exponent pair (x-degree, y-degree).
using Expo = std::pair<std::uint32_t, std::uint32_t>;

/// Graded-lexicographic order: by total degree, then by x-degree. This is
/// the canonical term order used for serialization everywhere.
struct GradedLexLess {
    bool operator()(const Expo& a, const Expo& b) const noexcept {
        std::uint64_t ta = std::uint64_t(a.first) + a.second;
        std::uint64_t tb = std::uint64_t(b.first) + b.second;
        if (ta != tb) return ta < tb;
        return a.first < b.first;
    }
};

/// Sparse bivariate polynomial over F_p. No zero coefficients are stored;
/// the term map is kept in graded-lex order so iteration (and hence
/// printing) is deterministic.
class BiPoly {
   public:
    using TermMap = std::map<Expo, Elt, GradedLexLess>;

    explicit BiPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    static BiPoly constant(const FieldCtx& ctx, Elt v) {
        BiPoly f(ctx);
        f.set(0, 0, v);
        return f;
    }

    static BiPoly monomial(const FieldCtx& ctx, std::uint32_t i, std::uint32_t j, Elt v) {
        BiPoly f(ctx);
        f.set(i, j, v);
        return f;
    }

    /// UniPoly in x, viewed as a bivariate polynomial.
    static BiPoly from_x_poly(const UniPoly& u) {
        BiPoly f(u.ctx());
        for (std::size_t i = 0; i < u.coeffs().size(); ++i) f.set(static_cast<std::uint32_t>(i), 0, u.coeffs()[i]);
        return f;
    }

    /// UniPoly in y, viewed as a bivariate polynomial.
    static BiPoly from_y_poly(const UniPoly& u) {
        BiPoly f(u.ctx());
        for (std::size_t j = 0; j < u.coeffs().size(); ++j) f.set(0, static_cast<std::uint32_t>(j), u.coeffs()[j]);
        return f;
    }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    long deg_x() const noexcept {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e.first));
        return d;
    }

    long deg_y() const noexcept {
        long d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e.second));
        return d;
    }

    long total_degree() const noexcept {
        if (terms_.empty()) return -1;
        const Expo& e = terms_.rbegin()->first;  // graded order: last term has max total degree
        return static_cast<long>(e.first) + e.second;
    }

    Elt coeff(std::uint32_t i, std::uint32_t j) const noexcept {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? 0 : it->second;
    }

    void set(std::uint32_t i, std::uint32_t j, Elt v) {
        if (v == 0)
            terms_.erase({i, j});
        else
            terms_[{i, j}] = v;
    }

    void add_term(std::uint32_t i, std::uint32_t j, Elt v) {
        if (v == 0) return;
        auto [it, inserted] = terms_.emplace(Expo{i, j}, v);
        if (!inserted) {
            it->second = ctx_.add(it->second, v);
            if (it->second == 0) terms_.erase(it);
        }
    }

    BiPoly operator+(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, c);
        return r;
    }

    BiPoly operator-(const BiPoly& o) const {
        BiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e.first, e.second, ctx_.neg(c));
        return r;
    }

    BiPoly operator-() const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : terms_) r.terms_[e] = ctx_.neg(c);
        return r;
    }

    BiPoly operator*(const BiPoly& o) const {
        BiPoly r(ctx_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) r.add_term(ea.first + eb.first, ea.second + eb.second, ctx_.mul(ca, cb));
        return r;
    }

    BiPoly scaled(Elt v) const {
        BiPoly r(ctx_);
        if (v == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = ctx_.mul(c, v);
        return r;
    }

    /// Multiply by x^i * y^j.
    BiPoly mono_shifted(std::uint32_t i, std::uint32_t j) const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : terms_) r.terms_[{e.first + i, e.second + j}] = c;
        return r;
    }

    Elt eval(Elt x, Elt y) const { return specialize_x(x).eval(y); }

    /// P(x0, y) as a univariate polynomial in y.
    UniPoly specialize_x(Elt x0) const {
        long dy = deg_y();
        std::vector<Elt> c(static_cast<std::size_t>(dy + 1), 0);
        for (const auto& [e, v] : terms_) c[e.second] = ctx_.add(c[e.second], ctx_.mul(v, ctx_.pow(x0, e.first)));
        return UniPoly(ctx_, std::move(c));
    }

    /// P(x, y0) as a univariate polynomial in x.
    UniPoly specialize_y(Elt y0) const {
        long dx = deg_x();
        std::vector<Elt> c(static_cast<std::size_t>(dx + 1), 0);
        for (const auto& [e, v] : terms_) c[e.first] = ctx_.add(c[e.first], ctx_.mul(v, ctx_.pow(y0, e.second)));
        return UniPoly(ctx_, std::move(c));
    }

    /// P(x, s*y).
    BiPoly scale_y(Elt s) const {
        BiPoly r(ctx_);
        for (const auto& [e, c] : terms_) r.set(e.first, e.second, ctx_.mul(c, ctx_.pow(s, e.second)));
        return r;
    }

    /// True iff every term has total degree exactly d.
    bool is_homogeneous(std::uint32_t d) const noexcept {
        for (const auto& [e, c] : terms_)
            if (e.first + e.second != d) return false;
        return true;
    }

    bool operator==(const BiPoly& o) const noexcept { return terms_ == o.terms_; }
    bool operator!=(const BiPoly& o) const noexcept { return !(*this == o); }

   private:
    FieldCtx ctx_;
    TermMap terms_;
};

/// Formal partial derivative with characteristic-p semantics: x^p
/// differentiates to zero.
inline BiPoly partial(const BiPoly& f, char var) {
    const FieldCtx& ctx = f.ctx();
    BiPoly r(ctx);
    for (const auto& [e, c] : f.terms()) {
        if (var == 'x') {
            if (e.first == 0) continue;
            r.add_term(e.first - 1, e.second, ctx.mul(c, ctx.from_int(e.first)));
        } else {
            if (e.second == 0) continue;
            r.add_term(e.first, e.second - 1, ctx.mul(c, ctx.from_int(e.second)));
        }
    }
    return r;
}

/// y-layer view: layers[j] is the coefficient of y^j as a polynomial in x.
inline std::vector<UniPoly> y_layers(const BiPoly& f) {
    long dy = f.deg_y();
    std::vector<std::vector<Elt>> raw(static_cast<std::size_t>(dy + 1));
    for (const auto& [e, c] : f.terms()) {
        auto& layer = raw[e.second];
        if (layer.size() <= e.first) layer.resize(e.first + 1, 0);
        layer[e.first] = c;
    }
    std::vector<UniPoly> out;
    out.reserve(raw.size());
    for (auto& v : raw) out.emplace_back(f.ctx(), std::move(v));
    return out;
}

inline BiPoly from_y_layers(const FieldCtx& ctx, const std::vector<UniPoly>& layers) {
    BiPoly r(ctx);
    for (std::size_t j = 0; j < layers.size(); ++j)
        for (std::size_t i = 0; i < layers[j].coeffs().size(); ++i)
            r.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), layers[j].coeffs()[i]);
    return r;
}

namespace detail {

inline long layers_degree(const std::vector<UniPoly>& layers) {
    long d = static_cast<long>(layers.size()) - 1;
    while (d >= 0 && layers[static_cast<std::size_t>(d)].is_zero()) --d;
    return d;
}

}  // namespace detail

/// Pseudo-remainder of Q by P with respect to y: the unique R with
/// deg_y R < deg_y P and f_n^e * Q = S*P + R, where f_n is the leading
/// y-coefficient of P and e the number of reduction steps taken. Returns
/// (R, e). If pad_to > e the remainder is additionally multiplied by
/// f_n^(pad_to - e), which keeps remainders of different inputs on a common
/// scale — linear combinations then commute with reduction.
inline std::pair<BiPoly, std::uint32_t> pseudo_rem_y(const BiPoly& q, const BiPoly& p, std::uint32_t pad_to = 0) {
    long n = p.deg_y();
    if (n < 1) throw BadShape("pseudo-division requires deg_y >= 1 divisor");
    const FieldCtx& ctx = p.ctx();
    std::vector<UniPoly> pl = y_layers(p);
    const UniPoly& fn = pl[static_cast<std::size_t>(n)];
    std::vector<UniPoly> r = y_layers(q);
    std::uint32_t steps = 0;
    long d = detail::layers_degree(r);
    while (d >= n) {
        UniPoly lead = r[static_cast<std::size_t>(d)];
        // r <- fn*r - lead*y^(d-n)*p ; the top layer cancels exactly.
        for (long j = 0; j < d; ++j) r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)] * fn;
        r[static_cast<std::size_t>(d)] = UniPoly(ctx);
        for (long i = 0; i < n; ++i) {
            std::size_t idx = static_cast<std::size_t>(d - n + i);
            r[idx] = r[idx] - lead * pl[static_cast<std::size_t>(i)];
        }
        ++steps;
        d = detail::layers_degree(r);
    }
    BiPoly rem = from_y_layers(ctx, r);
    for (std::uint32_t k = steps; k < pad_to; ++k) rem = rem * BiPoly::from_x_poly(fn);
    return {rem, steps};
}

/// Does P divide Q in F_p[x,y]? P must have positive y-degree and be
/// irreducible (user-asserted); then its leading y-coefficient is coprime to
/// P and the pseudo-remainder vanishes exactly when P | Q.
inline bool divides(const BiPoly& p, const BiPoly& q) {
    if (p.deg_y() < 1) throw BadShape("divides: divisor must have deg_y >= 1");
    return pseudo_rem_y(q, p).first.is_zero();
}

/// Resultant of P and Q with respect to y: Sylvester-matrix determinant over
/// F_p[x], computed by Bareiss fraction-free elimination.
inline UniPoly resultant_y(const BiPoly& p, const BiPoly& q) {
    long dp = p.deg_y(), dq = q.deg_y();
    if (dp < 1 || dq < 1) throw BadShape("resultant_y requires positive y-degree in both arguments");
    const FieldCtx& ctx = p.ctx();
    std::vector<UniPoly> pl = y_layers(p), ql = y_layers(q);
    std::size_t n = static_cast<std::size_t>(dp + dq);
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n, UniPoly(ctx)));
    for (long i = 0; i < dq; ++i)
        for (long j = 0; j <= dp; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = pl[static_cast<std::size_t>(dp - j)];
    for (long i = 0; i < dp; ++i)
        for (long j = 0; j <= dq; ++j) m[static_cast<std::size_t>(dq + i)][static_cast<std::size_t>(i + j)] = ql[static_cast<std::size_t>(dq - j)];

    bool negate = false;
    UniPoly prev = UniPoly::constant(ctx, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return UniPoly(ctx);  // singular: resultant is 0
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = UniPoly(ctx);
        }
        prev = m[k][k];
    }
    UniPoly det = m[n - 1][n - 1];
    return negate ? det.scaled(ctx.neg(1)) : det;
}

/// All (x0, y0) in F_p^2 with P = dP/dy = 0. P is assumed irreducible with
/// deg_y >= 1; the affine Bezout bound (m+n)(m+n-1) is enforced as a sanity
/// check on that assumption.
inline std::set<std::pair<Elt, Elt>> singular_points(const BiPoly& p, std::uint64_t seed = 0x5eedULL) {
    if (p.deg_y() < 1) throw BadShape("singular_points: deg_y P >= 1 required");
    BiPoly py = partial(p, 'y');
    std::set<std::pair<Elt, Elt>> out;
    if (py.is_zero()) throw CommonFactor("dP/dy vanishes identically (P is a polynomial in y^p)");

    std::vector<Elt> xs;
    if (py.deg_y() < 1) {
        UniPoly u = py.specialize_y(0);  // py does not involve y
        if (u.degree() < 1) return out;  // nonzero constant derivative: no zeros at all
        for (Elt x0 : uni_roots(u, seed)) xs.push_back(x0);
    } else {
        UniPoly res = resultant_y(p, py);
        if (res.is_zero()) throw CommonFactor("Res_y(P, dP/dy) = 0: P is not squarefree in y");
        for (Elt x0 : uni_roots(res, seed)) xs.push_back(x0);
    }
    for (Elt x0 : xs) {
        UniPoly a = p.specialize_x(x0);
        UniPoly b = py.specialize_x(x0);
        if (a.is_zero()) throw CommonFactor("P has the factor x - x0");
        if (py.deg_y() < 1) {
            // dP/dy(x0) = 0 held by choice of x0; common zeros are the roots of P(x0, .)
            if (a.degree() >= 1)
                for (Elt y0 : uni_roots(a, seed)) out.insert({x0, y0});
            continue;
        }
        UniPoly g = uni_gcd(a, b);
        if (g.degree() >= 1)
            for (Elt y0 : uni_roots(g, seed)) out.insert({x0, y0});
    }
    std::uint64_t md = static_cast<std::uint64_t>(p.deg_x() < 0 ? 0 : p.deg_x());
    std::uint64_t nd = static_cast<std::uint64_t>(p.deg_y());
    std::uint64_t cap = (md + nd) * (md + nd - 1);
    if (out.size() > cap)
        throw PrecondViolated("singular point count exceeds (m+n)(m+n-1); P is not irreducible");
    return out;
}

// ---------------------------------------------------------------------------
// Text grammar
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-'* atom ('^' uint)?
//   atom   := uint | 'x' | 'y' | '(' expr ')'
//
// Implicit multiplication is not part of the grammar ("3x" is an error), '^'
// takes a nonnegative decimal integer, whitespace is insignificant.
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
   public:
    PolyParser(const std::string& text, const FieldCtx& ctx) : s_(text), ctx_(ctx) {}

    BiPoly run() {
        BiPoly r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError("unexpected character", pos_);
        return r;
    }

   private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    BiPoly expr() {
        BiPoly acc = term();
        for (;;) {
            skip_ws();
            if (peek_is('+')) {
                ++pos_;
                acc = acc + term();
            } else if (peek_is('-')) {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    BiPoly term() {
        BiPoly acc = factor();
        while (peek_is('*')) {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    BiPoly factor() {
        skip_ws();
        bool neg = false;
        while (peek_is('-')) {
            ++pos_;
            neg = !neg;
        }
        BiPoly base = atom();
        skip_ws();
        if (peek_is('^')) {
            ++pos_;
            std::uint32_t e = exponent();
            BiPoly powed = BiPoly::constant(ctx_, 1);
            // square-and-multiply on the term map
            BiPoly sq = base;
            std::uint32_t k = e;
            while (k) {
                if (k & 1) powed = powed * sq;
                k >>= 1;
                if (k) sq = sq * sq;
            }
            base = powed;
        }
        return neg ? -base : base;
    }

    BiPoly atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw SyntaxError("expected operand", pos_);
        char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            return BiPoly::monomial(ctx_, 1, 0, 1);
        }
        if (c == 'y') {
            ++pos_;
            return BiPoly::monomial(ctx_, 0, 1, 1);
        }
        if (c == '(') {
            ++pos_;
            BiPoly inner = expr();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly::constant(ctx_, literal());
        throw SyntaxError("expected operand", pos_);
    }

    Elt literal() {
        Elt acc = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            acc = ctx_.reduce(static_cast<std::uint64_t>(acc) * 10 + static_cast<std::uint64_t>(s_[pos_] - '0'));
            ++pos_;
        }
        return acc;
    }

    std::uint32_t exponent() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '-') throw NegativeExponent("negative exponent at offset " + std::to_string(pos_));
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw SyntaxError("expected exponent", pos_);
        std::uint64_t acc = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            acc = acc * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            if (acc > (1u << 30)) throw SyntaxError("exponent too large", pos_);
            ++pos_;
        }
        return static_cast<std::uint32_t>(acc);
    }

    const std::string& s_;
    const FieldCtx& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline BiPoly parse_poly(const std::string& text, const FieldCtx& ctx) { return detail::PolyParser(text, ctx).run(); }

inline UniPoly parse_x_poly(const std::string& text, const FieldCtx& ctx) {
    BiPoly f = parse_poly(text, ctx);
    if (f.deg_y() > 0) throw SyntaxError("expected a polynomial in x only", 0);
    return f.specialize_y(0);
}

/// Canonical printer: graded-lex order (highest first), explicit '*' and
/// '^', canonical nonnegative coefficients. parse_poly round-trips this.
inline std::string to_string(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!out.empty()) out += " + ";
        std::string mono;
        if (e.first >= 1) {
            mono += "x";
            if (e.first > 1) mono += "^" + std::to_string(e.first);
        }
        if (e.second >= 1) {
            if (!mono.empty()) mono += "*";
            mono += "y";
            if (e.second > 1) mono += "^" + std::to_string(e.second);
        }
        if (mono.empty())
            out += std::to_string(c);
        else if (c == 1)
            out += mono;
        else
            out += std::to_string(c) + "*" + mono;
    }
    return out;
}

}  // namespace cosetbound

#endif  // COSETBOUND_BIPOLY_HPP
