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

#ifndef COSETBOUND_STEPANOV_HPP
#define COSETBOUND_STEPANOV_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bipoly.hpp"
#include "bounds.hpp"
#include "errors.hpp"
#include "ffield.hpp"
#include "modlinalg.hpp"
#include "unipoly.hpp"

namespace cosetbound {

// ===========================================================================
// Dense bivariate scratch arithmetic
//
// The derivative recursions multiply medium-degree polynomials thousands of
// times; a flat coefficient grid makes those products cache-friendly. BiPoly
// stays the public carrier, grids are conversion targets.
// ===========================================================================

namespace detail {

struct Grid {
    std::size_t nx = 0, ny = 0;  // dimensions: degrees + 1
    std::vector<Elt> a;

    Grid() = default;
    Grid(std::size_t nx_, std::size_t ny_) : nx(nx_), ny(ny_), a(nx_ * ny_, 0) {}

    bool empty() const noexcept { return nx == 0 || ny == 0; }
    Elt at(std::size_t i, std::size_t j) const noexcept { return a[i * ny + j]; }
    Elt& at(std::size_t i, std::size_t j) noexcept { return a[i * ny + j]; }

    static Grid from(const BiPoly& f) {
        if (f.is_zero()) return Grid();
        Grid g(static_cast<std::size_t>(f.deg_x()) + 1, static_cast<std::size_t>(f.deg_y()) + 1);
        for (const auto& [e, c] : f.terms()) g.at(e.first, e.second) = c;
        return g;
    }

    BiPoly to_bipoly(const FieldCtx& ctx) const {
        BiPoly f(ctx);
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                if (at(i, j) != 0) f.set(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), at(i, j));
        return f;
    }

    long deg_x() const noexcept {
        for (std::size_t i = nx; i-- > 0;)
            for (std::size_t j = 0; j < ny; ++j)
                if (a[i * ny + j] != 0) return static_cast<long>(i);
        return -1;
    }

    long deg_y() const noexcept {
        long d = -1;
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = ny; j-- > 0;)
                if (a[i * ny + j] != 0) {
                    if (static_cast<long>(j) > d) d = static_cast<long>(j);
                    break;
                }
        return d;
    }

    /// Shrink storage to the actual degree box.
    void tighten() {
        long dx = deg_x(), dy = deg_y();
        if (dx < 0) {
            nx = ny = 0;
            a.clear();
            return;
        }
        std::size_t mx = static_cast<std::size_t>(dx) + 1, my = static_cast<std::size_t>(dy) + 1;
        if (mx == nx && my == ny) return;
        std::vector<Elt> b(mx * my, 0);
        for (std::size_t i = 0; i < mx; ++i)
            for (std::size_t j = 0; j < my; ++j) b[i * my + j] = a[i * ny + j];
        a = std::move(b);
        nx = mx;
        ny = my;
    }

    Elt eval(const FieldCtx& ctx, Elt x, Elt y) const {
        Elt acc = 0;
        for (std::size_t i = nx; i-- > 0;) {
            Elt layer = 0;
            for (std::size_t j = ny; j-- > 0;) layer = ctx.muladd(a[i * ny + j], layer, y);
            acc = ctx.muladd(layer, acc, x);
        }
        return acc;
    }
};

inline Grid grid_mul(const FieldCtx& ctx, const Grid& f, const Grid& g) {
    if (f.empty() || g.empty()) return Grid();
    Grid out(f.nx + g.nx - 1, f.ny + g.ny - 1);
    for (std::size_t i1 = 0; i1 < f.nx; ++i1)
        for (std::size_t j1 = 0; j1 < f.ny; ++j1) {
            Elt c = f.at(i1, j1);
            if (c == 0) continue;
            const Elt* grow = g.a.data();
            for (std::size_t i2 = 0; i2 < g.nx; ++i2) {
                Elt* orow = &out.at(i1 + i2, j1);
                for (std::size_t j2 = 0; j2 < g.ny; ++j2)
                    orow[j2] = ctx.muladd(orow[j2], c, grow[i2 * g.ny + j2]);
            }
        }
    return out;
}

inline void grid_add_scaled(const FieldCtx& ctx, Grid& dst, const Grid& src, Elt s) {
    if (src.empty() || s == 0) return;
    if (dst.nx < src.nx || dst.ny < src.ny) {
        Grid neu(std::max(dst.nx, src.nx), std::max(dst.ny, src.ny));
        for (std::size_t i = 0; i < dst.nx; ++i)
            for (std::size_t j = 0; j < dst.ny; ++j) neu.at(i, j) = dst.at(i, j);
        dst = std::move(neu);
    }
    for (std::size_t i = 0; i < src.nx; ++i)
        for (std::size_t j = 0; j < src.ny; ++j) dst.at(i, j) = ctx.muladd(dst.at(i, j), s, src.at(i, j));
}

inline Grid grid_dx(const FieldCtx& ctx, const Grid& f) {
    if (f.nx <= 1) return Grid();
    Grid out(f.nx - 1, f.ny);
    for (std::size_t i = 1; i < f.nx; ++i) {
        Elt m = ctx.from_int(static_cast<long long>(i));
        for (std::size_t j = 0; j < f.ny; ++j) out.at(i - 1, j) = ctx.mul(f.at(i, j), m);
    }
    return out;
}

inline Grid grid_dy(const FieldCtx& ctx, const Grid& f) {
    if (f.ny <= 1) return Grid();
    Grid out(f.nx, f.ny - 1);
    for (std::size_t j = 1; j < f.ny; ++j) {
        Elt m = ctx.from_int(static_cast<long long>(j));
        for (std::size_t i = 0; i < f.nx; ++i) out.at(i, j - 1) = ctx.mul(f.at(i, j), m);
    }
    return out;
}

/// Multiply by x^i y^j.
inline Grid grid_shift(const Grid& f, std::size_t i, std::size_t j) {
    if (f.empty()) return Grid();
    Grid out(f.nx + i, f.ny + j);
    for (std::size_t x = 0; x < f.nx; ++x)
        for (std::size_t y = 0; y < f.ny; ++y) out.at(x + i, y + j) = f.at(x, y);
    return out;
}

}  // namespace detail

// ===========================================================================
// Derivative recursion q_k / r_k
// ===========================================================================

/// q_k and r_k with q_k / r_k = d^k y / dx^k on the curve P(x,y) = 0, and
/// r_k = (dP/dy)^(2k-1) identically.
struct DerivPair {
    std::uint32_t k;
    BiPoly q;
    BiPoly r;
};

/// All pairs for k = 1..kmax in one sweep (the recursion is incremental).
inline std::vector<DerivPair> derivative_pairs_up_to(const BiPoly& p, std::uint32_t kmax) {
    const FieldCtx& ctx = p.ctx();
    if (kmax >= ctx.p()) throw OrderTooLarge("derivative order must stay below p");
    if (p.deg_y() < 1) throw BadShape("derivative_pair requires deg_y P >= 1");
    if (kmax == 0) return {};
    using detail::Grid;
    Grid px = Grid::from(partial(p, 'x'));
    Grid py = Grid::from(partial(p, 'y'));
    Grid pyy = Grid::from(partial(partial(p, 'y'), 'y'));
    Grid pxy = Grid::from(partial(partial(p, 'x'), 'y'));
    Grid py2 = detail::grid_mul(ctx, py, py);
    Grid pxpy = detail::grid_mul(ctx, px, py);
    Grid pxypy = detail::grid_mul(ctx, pxy, py);
    Grid pyypx = detail::grid_mul(ctx, pyy, px);

    std::vector<DerivPair> out;
    Grid q(px.nx == 0 ? 0 : px.nx, px.nx == 0 ? 0 : px.ny);
    // q_1 = -P_x
    q = px;
    for (Elt& v : q.a) v = ctx.neg(v);
    Grid r = py;
    out.push_back({1, q.to_bipoly(ctx), r.to_bipoly(ctx)});
    for (std::uint32_t k = 1; k < kmax; ++k) {
        Grid next = detail::grid_mul(ctx, detail::grid_dx(ctx, q), py2);
        Elt c = ctx.from_int(2LL * k - 1);
        detail::grid_add_scaled(ctx, next, detail::grid_mul(ctx, detail::grid_dy(ctx, q), pxpy), ctx.neg(1));
        detail::grid_add_scaled(ctx, next, detail::grid_mul(ctx, q, pxypy), ctx.neg(c));
        detail::grid_add_scaled(ctx, next, detail::grid_mul(ctx, q, pyypx), c);
        next.tighten();
        q = std::move(next);
        r = detail::grid_mul(ctx, r, py2);
        out.push_back({k + 1, q.to_bipoly(ctx), r.to_bipoly(ctx)});
    }
    return out;
}

inline DerivPair derivative_pair(const BiPoly& p, std::uint32_t k) {
    if (k < 1) throw OrderTooLarge("derivative order must be >= 1");
    auto all = derivative_pairs_up_to(p, k);
    return std::move(all.back());
}

// ===========================================================================
// Operator factors
//
// D_k = (dP/dy)^(2k-1) x^k y^k d^k/dx^k maps the monomial x^(a+bt) y^(ct) to
// R_{k,a,b,c} * x^(a+bt) y^(ct) on the curve. R depends on (a,b,c) only
// through the exponents alpha = a + b t and beta = c t, and polynomially so:
//
//   R = sum_{u+v <= k} alpha^u beta^v S_k^{(u,v)}(x, y).
//
// The slices S^{(u,v)} follow the recursion (base S_1 = alpha y P_y + beta x q_1)
//
//   S_{k+1} = x y P_y^2 dS/dx + x y P_y q_1 dS/dy
//           + S * [ (alpha-k) y P_y^2 + (beta-k) x P_y q_1
//                   + (1-2k) x y (P_yx P_y + P_yy q_1) ].
//
// Keeping the slices parametric lets one system build serve every (a,b,c)
// column at once.
// ===========================================================================

namespace detail {

class OperatorSlices {
   public:
    explicit OperatorSlices(const BiPoly& p) : ctx_(p.ctx()) {
        if (p.deg_y() < 1) throw BadShape("operator factors require deg_y P >= 1");
        Grid px = Grid::from(partial(p, 'x'));
        Grid py = Grid::from(partial(p, 'y'));
        Grid pyx = Grid::from(partial(partial(p, 'y'), 'x'));
        Grid pyy = Grid::from(partial(partial(p, 'y'), 'y'));
        Grid q1 = px;
        for (Elt& v : q1.a) v = ctx_.neg(v);

        Grid py2 = grid_mul(ctx_, py, py);
        Grid pyq1 = grid_mul(ctx_, py, q1);
        mul_dx_ = grid_shift(py2, 1, 1);    // x y P_y^2
        mul_dy_ = grid_shift(pyq1, 1, 1);   // x y P_y q1
        alpha_mul_ = grid_shift(py2, 0, 1);  // y P_y^2
        beta_mul_ = grid_shift(pyq1, 1, 0);  // x P_y q1
        Grid w = grid_mul(ctx_, pyx, py);
        grid_add_scaled(ctx_, w, grid_mul(ctx_, pyy, q1), 1);
        w_ = grid_shift(w, 1, 1);  // x y (P_yx P_y + P_yy q1)

        // S_1: slice (1,0) = y P_y, slice (0,1) = x q1
        k_ = 1;
        slices_.assign(2, std::vector<Grid>(2));
        slices_[1][0] = grid_shift(py, 0, 1);
        slices_[0][1] = grid_shift(q1, 1, 0);
    }

    std::uint32_t k() const noexcept { return k_; }

    /// Slice (u, v); empty grid when u + v > k or the slice vanished.
    const Grid& slice(std::uint32_t u, std::uint32_t v) const {
        static const Grid kEmpty;
        if (u >= slices_.size() || v >= slices_[u].size()) return kEmpty;
        return slices_[u][v];
    }

    /// Copy of the current slice table (indexed [u][v]).
    std::vector<std::vector<Grid>> snapshot() const { return slices_; }

    /// Advance from S_k to S_{k+1}.
    void step() {
        if (k_ + 1 >= ctx_.p()) throw OrderTooLarge("derivative order must stay below p");
        std::uint32_t nk = k_ + 1;
        std::vector<std::vector<Grid>> next(nk + 1, std::vector<Grid>(nk + 1));
        Elt kc = ctx_.from_int(static_cast<long long>(k_));
        Elt c12k = ctx_.from_int(1LL - 2LL * k_);
        for (std::uint32_t u = 0; u <= k_; ++u) {
            for (std::uint32_t v = 0; v + u <= k_; ++v) {
                const Grid& s = slices_[u][v];
                if (s.empty()) continue;
                // derivative terms and the constant part stay at (u, v)
                Grid acc = grid_mul(ctx_, grid_dx(ctx_, s), mul_dx_);
                grid_add_scaled(ctx_, acc, grid_mul(ctx_, grid_dy(ctx_, s), mul_dy_), 1);
                grid_add_scaled(ctx_, acc, grid_mul(ctx_, s, alpha_mul_), ctx_.neg(kc));
                grid_add_scaled(ctx_, acc, grid_mul(ctx_, s, beta_mul_), ctx_.neg(kc));
                grid_add_scaled(ctx_, acc, grid_mul(ctx_, s, w_), c12k);
                grid_add_scaled(ctx_, next[u][v], acc, 1);
                // alpha * (y P_y^2) S shifts u, beta * (x P_y q1) S shifts v
                grid_add_scaled(ctx_, next[u + 1][v], grid_mul(ctx_, s, alpha_mul_), 1);
                grid_add_scaled(ctx_, next[u][v + 1], grid_mul(ctx_, s, beta_mul_), 1);
            }
        }
        for (auto& row : next)
            for (Grid& g : row) g.tighten();
        slices_ = std::move(next);
        k_ = nk;
    }

    /// Evaluate R at concrete coefficients alpha, beta (as a grid).
    Grid assemble(Elt alpha, Elt beta) const {
        Grid out;
        // Horner over u with inner Horner over v
        for (std::uint32_t u = k_ + 1; u-- > 0;) {
            Grid inner;
            for (std::uint32_t v = k_ + 1; v-- > 0;) {
                if (!inner.empty()) {
                    for (Elt& x : inner.a) x = ctx_.mul(x, beta);
                }
                if (u < slices_.size() && v < slices_[u].size() && !slices_[u][v].empty())
                    grid_add_scaled(ctx_, inner, slices_[u][v], 1);
            }
            if (!out.empty())
                for (Elt& x : out.a) x = ctx_.mul(x, alpha);
            grid_add_scaled(ctx_, out, inner, 1);
        }
        out.tighten();
        return out;
    }

   private:
    FieldCtx ctx_;
    std::uint32_t k_ = 1;
    std::vector<std::vector<Grid>> slices_;
    Grid mul_dx_, mul_dy_, alpha_mul_, beta_mul_, w_;
};

/// The same recursion with alpha and beta fixed to scalars: one grid per
/// order instead of a triangular slice table. Returns R for k = 1..kmax.
inline std::vector<Grid> operator_factor_grids(const BiPoly& p, Elt alpha, Elt beta, std::uint32_t kmax) {
    const FieldCtx& ctx = p.ctx();
    if (p.deg_y() < 1) throw BadShape("operator factors require deg_y P >= 1");
    Grid px = Grid::from(partial(p, 'x'));
    Grid py = Grid::from(partial(p, 'y'));
    Grid pyx = Grid::from(partial(partial(p, 'y'), 'x'));
    Grid pyy = Grid::from(partial(partial(p, 'y'), 'y'));
    Grid q1 = px;
    for (Elt& v : q1.a) v = ctx.neg(v);
    Grid py2 = grid_mul(ctx, py, py);
    Grid pyq1 = grid_mul(ctx, py, q1);
    Grid mul_dx = grid_shift(py2, 1, 1);
    Grid mul_dy = grid_shift(pyq1, 1, 1);
    Grid alpha_mul = grid_shift(py2, 0, 1);
    Grid beta_mul = grid_shift(pyq1, 1, 0);
    Grid w = grid_mul(ctx, pyx, py);
    grid_add_scaled(ctx, w, grid_mul(ctx, pyy, q1), 1);
    w = grid_shift(w, 1, 1);

    std::vector<Grid> out;
    Grid s;
    grid_add_scaled(ctx, s, grid_shift(py, 0, 1), alpha);
    grid_add_scaled(ctx, s, grid_shift(q1, 1, 0), beta);
    s.tighten();
    out.push_back(s);
    for (std::uint32_t k = 1; k < kmax; ++k) {
        Elt kc = ctx.from_int(static_cast<long long>(k));
        Grid next = grid_mul(ctx, grid_dx(ctx, s), mul_dx);
        grid_add_scaled(ctx, next, grid_mul(ctx, grid_dy(ctx, s), mul_dy), 1);
        grid_add_scaled(ctx, next, grid_mul(ctx, s, alpha_mul), ctx.sub(alpha, kc));
        grid_add_scaled(ctx, next, grid_mul(ctx, s, beta_mul), ctx.sub(beta, kc));
        grid_add_scaled(ctx, next, grid_mul(ctx, s, w), ctx.from_int(1LL - 2LL * k));
        next.tighten();
        s = std::move(next);
        out.push_back(s);
    }
    return out;
}

}  // namespace detail

/// Concrete operator factor R_{k,a,b,c} as a polynomial. k = 0 is the
/// identity operator. Exponent arithmetic a + b t and c t happens over the
/// integers; the values enter coefficients reduced mod p.
inline BiPoly operator_factor(const BiPoly& p, std::uint64_t t, std::uint32_t k, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    const FieldCtx& ctx = p.ctx();
    if (k >= ctx.p()) throw OrderTooLarge("derivative order must stay below p");
    if (k == 0) return BiPoly::constant(ctx, 1);
    Elt alpha = ctx.reduce(a + b * t);
    Elt beta = ctx.reduce(c * t);
    return detail::operator_factor_grids(p, alpha, beta, k).back().to_bipoly(ctx);
}

// ===========================================================================
// Parameters
// ===========================================================================

/// Box dimensions and vanishing order for the auxiliary polynomial.
/// h = 1 uses A = floor(t^(2/3)/n), B = C = floor(t^(1/3)),
///           D = floor(B^2/(4 m n^2));
/// h > 1 (m = n) uses A = floor(h^(-1/2) t^(2/3)), B = C = floor(h^(1/4) t^(1/3)),
///           D = floor(h^(-1/2) t^(2/3) / (4 n^3)).
struct StepanovParams {
    std::uint64_t t = 0;
    std::uint32_t m = 0, n = 0;
    std::uint32_t h = 1;
    std::uint64_t A = 0, B = 0, C = 0, D = 0;

    std::uint64_t columns() const noexcept { return A * B * C; }
    std::uint64_t psi_degree() const noexcept { return (A - 1) + (B - 1) * t + (C - 1) * t; }
};

inline StepanovParams choose_params(std::uint32_t m, std::uint32_t n, std::uint64_t t, std::uint32_t h = 1) {
    if (t < 2) throw ParamsInfeasible("t >= 2 required");
    if (m < 1 || n < 1) throw ParamsInfeasible("bidegree components must be >= 1");
    if (h < 1) throw ParamsInfeasible("h >= 1 required");
    StepanovParams out;
    out.t = t;
    out.m = m;
    out.n = n;
    out.h = h;
    mpz_class tt(static_cast<unsigned long>(t)), nn(static_cast<unsigned long>(n)), mm(static_cast<unsigned long>(m));
    if (h == 1) {
        mpz_class t23 = iroot_floor(tt * tt, 3);
        mpz_class a = t23 / nn;
        mpz_class b = iroot_floor(tt, 3);
        mpz_class d = (b * b) / (4 * mm * nn * nn);
        out.A = a.get_ui();
        out.B = out.C = b.get_ui();
        out.D = d.get_ui();
    } else {
        if (m != n) throw ParamsInfeasible("family parameters require m = n (homogeneous case)");
        mpz_class hh(static_cast<unsigned long>(h));
        mpz_class a = iroot_floor(ipow(tt, 4) / ipow(hh, 3), 6);
        mpz_class b = iroot_floor(ipow(hh, 3) * ipow(tt, 4), 12);
        mpz_class d = a / (4 * nn * nn * nn);
        out.A = a.get_ui();
        out.B = out.C = b.get_ui();
        out.D = d.get_ui();
    }
    if (out.A < 1) throw ParamsInfeasible("A = 0: subgroup too small for the construction");
    if (out.B < 1) throw ParamsInfeasible("B = 0: subgroup too small for the construction");
    if (out.D < 1) throw ParamsInfeasible("D = 0: no vanishing order left after flooring");
    if (static_cast<std::uint64_t>(n) * out.A * out.B > t)
        throw ParamsInfeasible("nAB <= t violated: the nonvanishing lemma would not apply");
    return out;
}

// ===========================================================================
// Linear forms and the symbolic system build
// ===========================================================================

/// Sparse linear form over the unknowns lambda_{a,b,c} (flat column index).
struct LinForm {
    std::vector<std::pair<std::uint32_t, Elt>> entries;  // sorted by column

    bool is_zero() const noexcept { return entries.empty(); }

    void add_scaled(const FieldCtx& ctx, const LinForm& o, Elt s) {
        if (s == 0 || o.entries.empty()) return;
        std::vector<std::pair<std::uint32_t, Elt>> merged;
        merged.reserve(entries.size() + o.entries.size());
        std::size_t i = 0, j = 0;
        while (i < entries.size() || j < o.entries.size()) {
            if (j == o.entries.size() || (i < entries.size() && entries[i].first < o.entries[j].first)) {
                merged.push_back(entries[i++]);
            } else if (i == entries.size() || entries[i].first > o.entries[j].first) {
                merged.emplace_back(o.entries[j].first, ctx.mul(o.entries[j].second, s));
                ++j;
            } else {
                Elt v = ctx.muladd(entries[i].second, o.entries[j].second, s);
                if (v != 0) merged.emplace_back(entries[i].first, v);
                ++i;
                ++j;
            }
        }
        entries = std::move(merged);
    }

    void scale(const FieldCtx& ctx, Elt s) {
        if (s == 0) {
            entries.clear();
            return;
        }
        for (auto& [c, v] : entries) v = ctx.mul(v, s);
    }

    Elt eval(const FieldCtx& ctx, const std::vector<Elt>& x) const {
        std::uint64_t acc = 0;
        for (const auto& [c, v] : entries) {
            acc += static_cast<std::uint64_t>(v) * x[c];
            if (acc >= (1ULL << 62)) acc = ctx.reduce(acc);
        }
        return ctx.reduce(acc);
    }
};

/// Bivariate polynomial whose coefficients are linear forms in the lambda
/// unknowns: the symbolic carrier of the divisibility conditions before the
/// solver runs.
class LinFormPoly {
   public:
    explicit LinFormPoly(const FieldCtx& ctx) : ctx_(ctx) {}

    const std::map<Expo, LinForm, GradedLexLess>& terms() const noexcept { return terms_; }

    void add_scaled_poly(const BiPoly& f, std::uint32_t column, Elt scale, std::uint32_t xshift = 0) {
        for (const auto& [e, c] : f.terms()) {
            Elt v = ctx_.mul(c, scale);
            if (v == 0) continue;
            LinForm single;
            single.entries.emplace_back(column, v);
            terms_[{e.first + xshift, e.second}].add_scaled(ctx_, single, 1);
        }
        prune();
    }

    long deg_y() const noexcept {
        long d = -1;
        for (const auto& [e, f] : terms_)
            if (!f.is_zero()) d = std::max(d, static_cast<long>(e.second));
        return d;
    }

    /// Substitute a concrete lambda vector, giving an ordinary polynomial.
    BiPoly substitute(const std::vector<Elt>& lambda) const {
        BiPoly out(ctx_);
        for (const auto& [e, f] : terms_) out.set(e.first, e.second, f.eval(ctx_, lambda));
        return out;
    }

    /// Symbolic pseudo-division remainder by P in y (same reduction loop as
    /// divides(), run on linear-form coefficients).
    LinFormPoly pseudo_rem_y(const BiPoly& p) const {
        long n = p.deg_y();
        if (n < 1) throw BadShape("pseudo-division requires deg_y >= 1 divisor");
        std::vector<UniPoly> pl = y_layers(p);
        const UniPoly& fn = pl[static_cast<std::size_t>(n)];
        LinFormPoly r = *this;
        for (;;) {
            long d = r.deg_y();
            if (d < n) break;
            // lead = coefficient of y^d (a map x-degree -> form)
            std::map<std::uint32_t, LinForm> lead;
            for (const auto& [e, f] : r.terms_)
                if (static_cast<long>(e.second) == d && !f.is_zero()) lead[e.first] = f;
            // r <- fn * r  -  lead * y^(d-n) * p
            LinFormPoly next(ctx_);
            for (const auto& [e, f] : r.terms_) {
                if (static_cast<long>(e.second) == d) continue;  // cancels exactly
                for (std::size_t i = 0; i < fn.coeffs().size(); ++i) {
                    Elt c = fn.coeffs()[i];
                    if (c == 0) continue;
                    LinForm scaled = f;
                    scaled.scale(ctx_, c);
                    next.terms_[{e.first + static_cast<std::uint32_t>(i), e.second}].add_scaled(ctx_, scaled, 1);
                }
            }
            for (const auto& [xi, f] : lead) {
                for (long j = 0; j < n; ++j) {
                    const UniPoly& pj = pl[static_cast<std::size_t>(j)];
                    for (std::size_t i = 0; i < pj.coeffs().size(); ++i) {
                        Elt c = pj.coeffs()[i];
                        if (c == 0) continue;
                        LinForm scaled = f;
                        scaled.scale(ctx_, ctx_.neg(c));
                        next.terms_[{xi + static_cast<std::uint32_t>(i),
                                     static_cast<std::uint32_t>(d - n + j)}]
                            .add_scaled(ctx_, scaled, 1);
                    }
                }
            }
            next.prune();
            r = std::move(next);
        }
        return r;
    }

   private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }

    FieldCtx ctx_;
    std::map<Expo, LinForm, GradedLexLess> terms_;
};

// ===========================================================================
// Column layout and the system build
// ===========================================================================

/// Columns are the unknowns lambda_{a,b,c}, (a,b,c) in [A]x[B]x[C] sorted in
/// graded order (total, then a, then b).
struct ColumnLayout {
    std::uint64_t A = 0, B = 0, C = 0;
    std::vector<std::array<std::uint32_t, 3>> triples;
    std::vector<std::uint32_t> index_of;  // a*B*C + b*C + c -> column

    explicit ColumnLayout(const StepanovParams& params) : A(params.A), B(params.B), C(params.C) {
        triples.reserve(A * B * C);
        for (std::uint32_t a = 0; a < A; ++a)
            for (std::uint32_t b = 0; b < B; ++b)
                for (std::uint32_t c = 0; c < C; ++c) triples.push_back({a, b, c});
        std::sort(triples.begin(), triples.end(), [](const auto& x, const auto& y) {
            std::uint64_t tx = std::uint64_t(x[0]) + x[1] + x[2], ty = std::uint64_t(y[0]) + y[1] + y[2];
            if (tx != ty) return tx < ty;
            if (x[0] != y[0]) return x[0] < y[0];
            if (x[1] != y[1]) return x[1] < y[1];
            return x[2] < y[2];
        });
        index_of.assign(A * B * C, 0);
        for (std::size_t i = 0; i < triples.size(); ++i) {
            const auto& tr = triples[i];
            index_of[(std::uint64_t(tr[0]) * B + tr[1]) * C + tr[2]] = static_cast<std::uint32_t>(i);
        }
    }

    std::uint32_t column(std::uint32_t a, std::uint32_t b, std::uint32_t c) const noexcept {
        return index_of[(std::uint64_t(a) * B + b) * C + c];
    }
};

namespace detail {

inline void check_stepanov_preconditions(const BiPoly& p) {
    if (p.deg_y() < 1) throw BadShape("deg_y P >= 1 required");
    if (p.coeff(0, 0) == 0) throw PrecondViolated("P(0,0) = 0");
    if (p.specialize_y(0).degree() < 1) throw PrecondViolated("deg P(x,0) >= 1 required");
}

/// x-coefficient vectors of the n y-layers of a reduced slice.
struct ReducedSlice {
    std::vector<std::vector<Elt>> layers;  // layers[j][i]: coeff of x^i y^j
    long max_x = -1;
};

/// Pseudo-reduce a grid slice mod P, padding with leading-coefficient
/// factors to exactly `pad_to` steps so different slices stay on a common
/// scale.
inline ReducedSlice reduce_slice(const FieldCtx& ctx, const Grid& slice, const BiPoly& p, std::uint32_t pad_to) {
    ReducedSlice out;
    if (slice.empty()) return out;
    auto [rem, steps] = pseudo_rem_y(slice.to_bipoly(ctx), p, pad_to);
    long n = p.deg_y();
    out.layers.assign(static_cast<std::size_t>(std::max<long>(n, 1)), {});
    for (const auto& [e, c] : rem.terms()) {
        auto& layer = out.layers[e.second];
        if (layer.size() <= e.first) layer.resize(e.first + 1, 0);
        layer[e.first] = c;
        out.max_x = std::max(out.max_x, static_cast<long>(e.first));
    }
    return out;
}

}  // namespace detail

/// Rows of the homogeneous system expressing "P divides R_k for
/// k = 0..D-1" for every coset pair (gamma_1, gamma_2), with
/// R_k = sum lambda_{a,b,c} gamma_1^b gamma_2^c x^a R_{k,a,b,c}. Columns
/// follow the graded (a,b,c) layout. When deg_y R_k < n the conditions
/// degenerate to coefficientwise vanishing of R_k (a nonzero multiple of P
/// would need y-degree >= n); the same reduction loop covers that case with
/// zero elimination steps.
///
/// The reduction runs once per parametric slice S_k^{(u,v)} and the columns
/// are linear recombinations (evaluation at alpha = a + b t, beta = c t and
/// multiplication by x^a), which is the same symbolic pseudo-division as
/// build_system_symbolic organized per basis element; see the tests for the
/// kernel-level equivalence of the two builds.
inline MatFp build_system_blocks(const BiPoly& p, const StepanovParams& params,
                                 const std::vector<std::pair<Elt, Elt>>& gammas,
                                 std::uint64_t entry_limit = MatFp::kDefaultEntryLimit) {
    detail::check_stepanov_preconditions(p);
    const FieldCtx& ctx = p.ctx();
    if (params.D >= ctx.p()) throw OrderTooLarge("vanishing order D must stay below p");
    const long n = p.deg_y();
    ColumnLayout layout(params);
    const std::uint64_t cols = params.columns();

    // Pass 1: reduce slices for every k and record row-band widths.
    std::optional<detail::OperatorSlices> slices;
    std::vector<std::vector<std::vector<detail::ReducedSlice>>> reduced(params.D);  // [k][u][v]
    std::vector<long> band_x(params.D, -1);   // max x-degree of reduced slices per k
    std::vector<long> band_y(params.D, -1);   // max y-degree per k
    for (std::uint32_t k = 0; k < params.D; ++k) {
        std::vector<std::vector<detail::Grid const*>> grids;
        if (k == 0) {
            // S_0 = 1
            reduced[0].assign(1, std::vector<detail::ReducedSlice>(1));
            detail::ReducedSlice one;
            one.layers.assign(static_cast<std::size_t>(n), {});
            one.layers[0] = {1};
            one.max_x = 0;
            reduced[0][0][0] = std::move(one);
            band_x[0] = 0;
            band_y[0] = 0;
            continue;
        }
        if (!slices)
            slices.emplace(p);
        while (slices->k() < k) slices->step();
        long dymax = -1;
        for (std::uint32_t u = 0; u <= k; ++u)
            for (std::uint32_t v = 0; u + v <= k; ++v) dymax = std::max(dymax, slices->slice(u, v).deg_y());
        std::uint32_t pad = dymax >= n ? static_cast<std::uint32_t>(dymax - n + 1) : 0;
        reduced[k].assign(k + 1, std::vector<detail::ReducedSlice>(k + 1));
        for (std::uint32_t u = 0; u <= k; ++u)
            for (std::uint32_t v = 0; u + v <= k; ++v) {
                const detail::Grid& s = slices->slice(u, v);
                if (s.empty()) continue;
                detail::ReducedSlice rs = detail::reduce_slice(ctx, s, p, pad);
                band_x[k] = std::max(band_x[k], rs.max_x);
                for (std::size_t j = 0; j < rs.layers.size(); ++j)
                    if (!rs.layers[j].empty()) band_y[k] = std::max(band_y[k], static_cast<long>(j));
                reduced[k][u][v] = std::move(rs);
            }
        if (band_x[k] < 0) band_x[k] = 0;  // all conditions vanished for this k
        if (band_y[k] < 0) band_y[k] = 0;
    }

    // Row bookkeeping: block per (pair, k), band per y-layer inside.
    std::vector<std::size_t> block_base;
    std::size_t total_rows = 0;
    for (std::size_t pair = 0; pair < gammas.size(); ++pair)
        for (std::uint32_t k = 0; k < params.D; ++k) {
            block_base.push_back(total_rows);
            std::size_t width = static_cast<std::size_t>(band_x[k]) + params.A;  // (A-1) + band_x + 1
            total_rows += width * static_cast<std::size_t>(band_y[k] + 1);
        }

    MatFp mat(ctx, total_rows, cols, entry_limit);

    // Pass 2: fill columns.
    std::vector<Elt> omega;  // Horner accumulator, layer-major: [j][i]
    for (std::size_t pair = 0; pair < gammas.size(); ++pair) {
        auto [g1, g2] = gammas[pair];
        std::vector<Elt> g1pow(params.B, 1), g2pow(params.C, 1);
        for (std::uint64_t b = 1; b < params.B; ++b) g1pow[b] = ctx.mul(g1pow[b - 1], g1);
        for (std::uint64_t c = 1; c < params.C; ++c) g2pow[c] = ctx.mul(g2pow[c - 1], g2);
        for (std::uint32_t k = 0; k < params.D; ++k) {
            std::size_t base = block_base[pair * params.D + k];
            std::size_t width = static_cast<std::size_t>(band_x[k]) + params.A;
            std::size_t veclen = static_cast<std::size_t>(band_x[k]) + 1;
            std::size_t nlayers = static_cast<std::size_t>(band_y[k]) + 1;
            // collapse v per c, then Horner over u per (b, a)
            std::vector<std::vector<Elt>> rho(k + 1);  // [u]: layer-major vector
            for (std::uint64_t c = 0; c < params.C; ++c) {
                Elt beta = ctx.reduce(c * params.t % ctx.p());
                for (std::uint32_t u = 0; u <= k; ++u) {
                    auto& dst = rho[u];
                    dst.assign(nlayers * veclen, 0);
                    // Horner over v
                    for (std::uint32_t v = k - u + 1; v-- > 0;) {
                        if (beta != 0) {
                            for (Elt& x : dst) x = ctx.mul(x, beta);
                        } else if (v + 1 <= k - u) {
                            std::fill(dst.begin(), dst.end(), 0);
                        }
                        const detail::ReducedSlice& rs = reduced[k][u][v];
                        if (rs.max_x < 0) continue;
                        for (std::size_t j = 0; j < rs.layers.size() && j < nlayers; ++j) {
                            const auto& src = rs.layers[j];
                            Elt* out = &dst[j * veclen];
                            for (std::size_t i = 0; i < src.size(); ++i) out[i] = ctx.add(out[i], src[i]);
                        }
                    }
                }
                for (std::uint64_t b = 0; b < params.B; ++b) {
                    for (std::uint64_t a = 0; a < params.A; ++a) {
                        Elt alpha = ctx.reduce((a + b * params.t) % ctx.p());
                        omega.assign(nlayers * veclen, 0);
                        for (std::uint32_t u = k + 1; u-- > 0;) {
                            if (alpha != 0) {
                                for (Elt& x : omega) x = ctx.mul(x, alpha);
                            } else {
                                std::fill(omega.begin(), omega.end(), 0);
                            }
                            const auto& src = rho[u];
                            for (std::size_t idx = 0; idx < omega.size(); ++idx)
                                omega[idx] = ctx.add(omega[idx], src[idx]);
                        }
                        Elt gscale = ctx.mul(g1pow[b], g2pow[c]);
                        if (gscale == 0) continue;
                        std::uint32_t col = layout.column(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                                          static_cast<std::uint32_t>(c));
                        for (std::size_t j = 0; j < nlayers; ++j) {
                            const Elt* src = &omega[j * veclen];
                            for (std::size_t i = 0; i < veclen; ++i) {
                                if (src[i] == 0) continue;
                                mat.at(base + j * width + a + i, col) = ctx.mul(gscale, src[i]);
                            }
                        }
                    }
                }
            }
        }
    }
    return mat;
}

inline MatFp build_system(const BiPoly& p, const StepanovParams& params, Elt gamma1, Elt gamma2,
                          std::uint64_t entry_limit = MatFp::kDefaultEntryLimit) {
    return build_system_blocks(p, params, {{gamma1, gamma2}}, entry_limit);
}

/// The same conditions built literally: assemble each R_k as a LinFormPoly
/// and run the pseudo-division of divides() on its symbolic coefficients.
/// Row-by-row this can differ from build_system by nonzero row scalings and
/// padding rows, but the solution set is identical. Meant for cross-checks
/// and small instances; the slice build is the production path.
inline MatFp build_system_symbolic(const BiPoly& p, const StepanovParams& params,
                                   const std::vector<std::pair<Elt, Elt>>& gammas,
                                   std::uint64_t entry_limit = MatFp::kDefaultEntryLimit) {
    detail::check_stepanov_preconditions(p);
    const FieldCtx& ctx = p.ctx();
    const long n = p.deg_y();
    ColumnLayout layout(params);
    std::vector<std::vector<Elt>> rows;

    std::optional<detail::OperatorSlices> slices;
    for (std::uint32_t k = 0; k < params.D; ++k) {
        if (k >= 1) {
            if (!slices) slices.emplace(p);
            while (slices->k() < k) slices->step();
        }
        for (const auto& [g1, g2] : gammas) {
            LinFormPoly rk(ctx);
            for (std::uint32_t a = 0; a < params.A; ++a)
                for (std::uint32_t b = 0; b < params.B; ++b)
                    for (std::uint32_t c = 0; c < params.C; ++c) {
                        Elt alpha = ctx.reduce((a + std::uint64_t(b) * params.t) % ctx.p());
                        Elt beta = ctx.reduce(std::uint64_t(c) * params.t % ctx.p());
                        BiPoly r = k == 0 ? BiPoly::constant(ctx, 1) : slices->assemble(alpha, beta).to_bipoly(ctx);
                        Elt scale = ctx.mul(ctx.pow(g1, b), ctx.pow(g2, c));
                        rk.add_scaled_poly(r, layout.column(a, b, c), scale, a);
                    }
            LinFormPoly rem = rk.deg_y() >= n ? rk.pseudo_rem_y(p) : rk;
            for (const auto& [e, form] : rem.terms()) {
                (void)e;
                if (form.is_zero()) continue;
                std::vector<Elt> row(params.columns(), 0);
                for (const auto& [col, v] : form.entries) row[col] = v;
                rows.push_back(std::move(row));
            }
        }
    }
    MatFp mat(ctx, rows.size(), params.columns(), entry_limit);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) mat.at(i, j) = rows[i][j];
    return mat;
}

// ===========================================================================
// Certificates
// ===========================================================================

struct CertChecks {
    bool nonzero_lambda = false;
    bool nab_le_t = false;
    bool p00_nonzero = false;
    bool system_solved = false;
    bool point_vanishing_verified = false;

    bool all_construction() const noexcept { return nonzero_lambda && nab_le_t && p00_nonzero && system_solved; }
};

/// The auxiliary polynomial Psi = sum lambda_{a,b,c} x^(a+bt) y^(ct) together
/// with everything needed to re-check it: parameters, the solved lambda
/// vector (sparse, graded order), flags, and the implied count bound.
/// Psi is never expanded; it is evaluated through x^t and y^t powers.
struct StepanovCertificate {
    std::uint32_t p = 0;
    std::string poly_text;
    std::vector<std::pair<Elt, Elt>> pairs;  // coset representatives (g1, g2)
    StepanovParams params;
    std::vector<std::pair<std::array<std::uint32_t, 3>, Elt>> lambda;  // nonzero entries
    std::size_t rows = 0, cols = 0;
    std::uint64_t psi_degree = 0;
    std::uint64_t raw_bound = 0;
    std::uint64_t corrections = 0;
    std::uint64_t bound = 0;
    CertChecks checks;
};

namespace detail {

struct CorrectionCounts {
    std::uint64_t axis_x = 0;       // curve points with x = 0
    std::uint64_t axis_y = 0;       // curve points with y = 0
    std::uint64_t singular = 0;     // points with P = dP/dy = 0
    std::uint64_t coset_dpy = 0;    // singular points inside the coset grids
};

inline CorrectionCounts correction_counts(const BiPoly& p, const std::vector<std::pair<Coset, Coset>>& pairs,
                                          std::uint64_t seed) {
    CorrectionCounts out;
    UniPoly at_x0 = p.specialize_x(0);
    if (!at_x0.is_zero() && at_x0.degree() >= 1) out.axis_x = uni_roots(at_x0, seed).size();
    UniPoly at_y0 = p.specialize_y(0);
    if (!at_y0.is_zero() && at_y0.degree() >= 1) out.axis_y = uni_roots(at_y0, seed).size();
    auto sing = singular_points(p, seed);
    out.singular = sing.size();
    for (const auto& [c1, c2] : pairs) {
        for (const auto& [x0, y0] : sing) {
            if (x0 == 0 || y0 == 0) continue;
            if (coset_contains(c1, x0) && coset_contains(c2, y0)) ++out.coset_dpy;
        }
    }
    return out;
}

}  // namespace detail

/// Construct a certificate for the solutions of P = 0 over one or more
/// coset-pair grids sharing a subgroup (one pair realizes the single-coset
/// bound, h > 1 pairs the family bound). The bound is
/// floor(deg Psi (m+n) / D) plus explicit corrections for the points the
/// vanishing argument excludes: curve points on the axes, singular points
/// (D each), and coset-grid points where dP/dy vanishes (D each).
inline StepanovCertificate construct_certificate(const BiPoly& p, const std::vector<std::pair<Coset, Coset>>& pairs,
                                                 std::uint64_t entry_limit = MatFp::kDefaultEntryLimit,
                                                 std::uint64_t seed = 0x5eedULL) {
    if (pairs.empty()) throw PrecondViolated("at least one coset pair required");
    const FieldCtx& ctx = p.ctx();
    detail::check_stepanov_preconditions(p);
    std::uint32_t t = pairs.front().first.sub.t;
    for (const auto& [c1, c2] : pairs)
        if (c1.sub.t != t || c2.sub.t != t || c1.sub.ctx != ctx || c2.sub.ctx != ctx)
            throw PrecondViolated("all cosets must share one subgroup of the coefficient field");

    StepanovCertificate cert;
    cert.p = ctx.p();
    cert.poly_text = to_string(p);
    for (const auto& [c1, c2] : pairs) cert.pairs.emplace_back(c1.rep, c2.rep);

    std::uint32_t m = static_cast<std::uint32_t>(std::max(p.deg_x(), 1L));
    std::uint32_t n = static_cast<std::uint32_t>(p.deg_y());
    cert.params = choose_params(m, n, t, static_cast<std::uint32_t>(pairs.size()));
    if (cert.params.D >= ctx.p()) throw OrderTooLarge("vanishing order D must stay below p");

    std::vector<std::pair<Elt, Elt>> gammas;
    for (const auto& [c1, c2] : pairs) gammas.emplace_back(c1.gamma(), c2.gamma());
    MatFp system = build_system_blocks(p, cert.params, gammas, entry_limit);
    cert.rows = system.rows();
    cert.cols = system.cols();
    if (cert.rows >= cert.cols)
        throw NoKernel("condition count " + std::to_string(cert.rows) + " reached the unknown count " +
                       std::to_string(cert.cols));
    auto lambda = nullspace_vector(system);
    if (!lambda) throw NoKernel("homogeneous system has a trivial kernel");

    ColumnLayout layout(cert.params);
    for (std::size_t i = 0; i < lambda->size(); ++i)
        if ((*lambda)[i] != 0) cert.lambda.emplace_back(layout.triples[i], (*lambda)[i]);

    cert.checks.nonzero_lambda = !cert.lambda.empty();
    cert.checks.nab_le_t = static_cast<std::uint64_t>(n) * cert.params.A * cert.params.B <= t;
    cert.checks.p00_nonzero = p.coeff(0, 0) != 0;
    {
        auto mv = system.apply(*lambda);
        cert.checks.system_solved = true;
        for (Elt v : mv)
            if (v != 0) cert.checks.system_solved = false;
    }

    cert.psi_degree = cert.params.psi_degree();
    cert.raw_bound = cert.psi_degree * (static_cast<std::uint64_t>(m) + n) / cert.params.D;
    auto corr = detail::correction_counts(p, pairs, seed);
    cert.corrections = corr.axis_x + corr.axis_y + cert.params.D * corr.singular + cert.params.D * corr.coset_dpy;
    cert.bound = cert.raw_bound + cert.corrections;
    return cert;
}

inline StepanovCertificate construct_certificate(const BiPoly& p, const Coset& c1, const Coset& c2,
                                                 std::uint64_t entry_limit = MatFp::kDefaultEntryLimit,
                                                 std::uint64_t seed = 0x5eedULL) {
    return construct_certificate(p, std::vector<std::pair<Coset, Coset>>{{c1, c2}}, entry_limit, seed);
}

// ===========================================================================
// Verification
//
// At every counted solution with x y dP/dy != 0, the certificate promises
// that Psi vanishes along the curve branch to order D. The oracle expands
// the branch y(x) as a truncated power series at the point (the implicit
// function theorem needs only dP/dy != 0; orders stay below D < p, so the
// factorial scalings remain invertible) and checks that the series of Psi
// along the branch vanishes mod eps^D. Independently, the assembled
// operator values R_k(x0, y0) must match (dP/dy)^(2k-1) x0^k y0^k times the
// k-th derivative from the series; the two routes share nothing but P.
// ===========================================================================

namespace detail {

/// Truncated power series with D coefficients over F_p.
using Series = std::vector<Elt>;

inline Series series_mul(const FieldCtx& ctx, const Series& a, const Series& b) {
    std::size_t d = a.size();
    Series out(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j + i < d; ++j) out[i + j] = ctx.muladd(out[i + j], a[i], b[j]);
    }
    return out;
}

inline Series series_pow(const FieldCtx& ctx, Series base, std::uint64_t e, std::size_t d) {
    Series out(d, 0);
    out[0] = 1;
    while (e) {
        if (e & 1) out = series_mul(ctx, out, base);
        base = series_mul(ctx, base, base);
        e >>= 1;
    }
    return out;
}

/// (x0 + eps)^e mod eps^d via binomials; e is an integer exponent (can
/// exceed p), binomial coefficients are built by the falling-factorial
/// product, exact mod p for d < p.
inline Series binomial_series(const FieldCtx& ctx, Elt x0, std::uint64_t e, std::size_t d) {
    Series out(d, 0);
    Elt binom = 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (j > 0) {
            if (j > e) break;
            Elt num = ctx.from_int(static_cast<long long>((e - j + 1) % ctx.p()));
            binom = ctx.mul(binom, ctx.mul(num, ctx.inv(ctx.from_int(static_cast<long long>(j)))));
        }
        if (e >= j) out[j] = e == j ? binom : ctx.mul(binom, ctx.pow(x0, e - j));
    }
    return out;
}

/// The branch y(x0 + eps) = y0 + c1 eps + ... through a point with
/// dP/dy(x0,y0) != 0, solved order by order.
inline Series branch_series(const BiPoly& p, Elt x0, Elt y0, std::size_t d) {
    const FieldCtx& ctx = p.ctx();
    Elt py = partial(p, 'y').eval(x0, y0);
    if (py == 0) throw SingularEvaluation("dP/dy vanishes at the expansion point");
    if (p.eval(x0, y0) != 0) throw PrecondViolated("expansion point is not on the curve");
    // P(x0+eps, y) with coefficients as series in eps, indexed by y-degree
    long n = p.deg_y();
    std::vector<Series> shifted(static_cast<std::size_t>(n + 1), Series(d, 0));
    for (const auto& [e, c] : p.terms()) {
        Series xs = binomial_series(ctx, x0, e.first, d);
        for (std::size_t j = 0; j < d; ++j) shifted[e.second][j] = ctx.muladd(shifted[e.second][j], c, xs[j]);
    }
    Series y(d, 0);
    y[0] = y0;
    Elt py_inv = ctx.inv(py);
    for (std::size_t order = 1; order < d; ++order) {
        // residual = P(x0+eps, y(eps)) mod eps^(order+1); its eps^order
        // coefficient is linear in the unknown y[order] with slope py.
        Series acc(d, 0);
        for (long j = n; j >= 0; --j) {
            acc = series_mul(ctx, acc, y);
            for (std::size_t i = 0; i < d; ++i) acc[i] = ctx.add(acc[i], shifted[static_cast<std::size_t>(j)][i]);
        }
        y[order] = ctx.mul(ctx.neg(acc[order]), py_inv);
    }
    return y;
}

}  // namespace detail

/// Check the certificate against the exact solution set. For every solution
/// with x0 y0 != 0 and dP/dy != 0: the series of Psi along the branch must
/// vanish mod eps^D, and the assembled R_k(x0,y0) must equal
/// (dP/dy)^(2k-1) x0^k y0^k k! [eps^k] of that series for k = 0..D-1.
inline bool verify_certificate(const StepanovCertificate& cert, const BiPoly& p,
                               const std::vector<std::pair<Coset, Coset>>& pairs,
                               const std::vector<std::vector<std::pair<Elt, Elt>>>& solutions_per_pair) {
    const FieldCtx& ctx = p.ctx();
    if (pairs.size() != cert.pairs.size() || solutions_per_pair.size() != pairs.size())
        throw PrecondViolated("solution sets must align with the certificate's coset pairs");
    const std::size_t d = static_cast<std::size_t>(cert.params.D);
    BiPoly py = partial(p, 'y');

    // factorials up to D (D < p keeps them invertible)
    std::vector<Elt> fact(d + 1, 1);
    for (std::size_t i = 1; i <= d; ++i) fact[i] = ctx.mul(fact[i - 1], ctx.from_int(static_cast<long long>(i)));

    // slice tables for every k < D
    std::vector<std::vector<std::vector<detail::Grid>>> slices_at(cert.params.D);
    if (cert.params.D > 1) {
        detail::OperatorSlices slices(p);
        for (std::uint32_t k = 1; k < cert.params.D; ++k) {
            while (slices.k() < k) slices.step();
            slices_at[k] = slices.snapshot();
        }
    }

    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto& [c1, c2] = pairs[pi];
        Elt g1 = c1.gamma(), g2 = c2.gamma();
        for (const auto& [x0, y0] : solutions_per_pair[pi]) {
            if (x0 == 0 || y0 == 0) continue;
            if (py.eval(x0, y0) == 0) continue;  // excluded by the correction terms
            detail::Series ybr = detail::branch_series(p, x0, y0, d);

            // Psi along the branch, through x^t and y^t powers
            detail::Series xt = detail::binomial_series(ctx, x0, cert.params.t, d);
            detail::Series yt = detail::series_pow(ctx, ybr, cert.params.t, d);
            std::vector<detail::Series> xa(cert.params.A), xtb(cert.params.B), ytc(cert.params.C);
            xa[0] = detail::Series(d, 0);
            xa[0][0] = 1;
            detail::Series xlin(d, 0);
            xlin[0] = x0;
            if (d > 1) xlin[1] = 1;
            for (std::uint64_t a = 1; a < cert.params.A; ++a) xa[a] = detail::series_mul(ctx, xa[a - 1], xlin);
            xtb[0] = xa[0];
            for (std::uint64_t b = 1; b < cert.params.B; ++b) xtb[b] = detail::series_mul(ctx, xtb[b - 1], xt);
            ytc[0] = xa[0];
            for (std::uint64_t c = 1; c < cert.params.C; ++c) ytc[c] = detail::series_mul(ctx, ytc[c - 1], yt);
            detail::Series psi(d, 0);
            for (const auto& [abc, v] : cert.lambda) {
                detail::Series term = detail::series_mul(ctx, xa[abc[0]], xtb[abc[1]]);
                term = detail::series_mul(ctx, term, ytc[abc[2]]);
                for (std::size_t i = 0; i < d; ++i) psi[i] = ctx.muladd(psi[i], v, term[i]);
            }
            for (Elt coeff : psi)
                if (coeff != 0) return false;

            // assembled operator values against the series derivatives
            Elt pyv = py.eval(x0, y0);
            for (std::uint32_t k = 0; k < cert.params.D; ++k) {
                Elt assembled = 0;
                if (k == 0) {
                    for (const auto& [abc, v] : cert.lambda) {
                        Elt w = ctx.mul(ctx.pow(g1, abc[1]), ctx.pow(g2, abc[2]));
                        assembled = ctx.add(assembled, ctx.mul(v, ctx.mul(w, ctx.pow(x0, abc[0]))));
                    }
                } else {
                    // scalar slice values, then the (alpha, beta) polynomial per entry
                    const auto& table = slices_at[k];
                    std::vector<std::vector<Elt>> sval(k + 1, std::vector<Elt>(k + 1, 0));
                    for (std::uint32_t u = 0; u <= k; ++u)
                        for (std::uint32_t v = 0; u + v <= k; ++v) {
                            if (u >= table.size() || v >= table[u].size()) continue;
                            const detail::Grid& g = table[u][v];
                            if (!g.empty()) sval[u][v] = g.eval(ctx, x0, y0);
                        }
                    for (const auto& [abc, lv] : cert.lambda) {
                        Elt alpha = ctx.reduce((abc[0] + std::uint64_t(abc[1]) * cert.params.t) % ctx.p());
                        Elt beta = ctx.reduce(std::uint64_t(abc[2]) * cert.params.t % ctx.p());
                        Elt acc = 0;
                        for (std::uint32_t u = k + 1; u-- > 0;) {
                            Elt inner = 0;
                            for (std::uint32_t v = k + 1; v-- > 0;) {
                                inner = ctx.mul(inner, beta);
                                if (u + v <= k) inner = ctx.add(inner, sval[u][v]);
                            }
                            acc = ctx.muladd(inner, acc, alpha);
                        }
                        Elt w = ctx.mul(ctx.pow(g1, abc[1]), ctx.pow(g2, abc[2]));
                        assembled = ctx.add(assembled, ctx.mul(lv, ctx.mul(w, ctx.mul(ctx.pow(x0, abc[0]), acc))));
                    }
                }
                // (dP/dy)^(2k-1) x^k y^k k! [eps^k]
                Elt expected = k == 0 ? psi[0]
                                      : ctx.mul(ctx.mul(ctx.pow(pyv, 2 * k - 1),
                                                        ctx.mul(ctx.pow(x0, k), ctx.pow(y0, k))),
                                                ctx.mul(fact[k], psi[k]));
                if (assembled != expected) return false;
            }
        }
    }
    return true;
}

inline bool verify_certificate(const StepanovCertificate& cert, const BiPoly& p, const Coset& c1, const Coset& c2,
                               const std::vector<std::pair<Elt, Elt>>& solutions) {
    return verify_certificate(cert, p, {{c1, c2}}, {solutions});
}

// ===========================================================================
// Serialization: a structured text document with a stable field order.
// ===========================================================================

inline std::string certificate_to_text(const StepanovCertificate& cert) {
    std::string out;
    out += "cosetbound-certificate v1\n";
    out += "p: " + std::to_string(cert.p) + "\n";
    out += "t: " + std::to_string(cert.params.t) + "\n";
    out += "poly: " + cert.poly_text + "\n";
    out += "pairs: " + std::to_string(cert.pairs.size()) + "\n";
    for (const auto& [g1, g2] : cert.pairs)
        out += "pair: " + std::to_string(g1) + " " + std::to_string(g2) + "\n";
    out += "m: " + std::to_string(cert.params.m) + "\n";
    out += "n: " + std::to_string(cert.params.n) + "\n";
    out += "h: " + std::to_string(cert.params.h) + "\n";
    out += "A: " + std::to_string(cert.params.A) + "\n";
    out += "B: " + std::to_string(cert.params.B) + "\n";
    out += "C: " + std::to_string(cert.params.C) + "\n";
    out += "D: " + std::to_string(cert.params.D) + "\n";
    out += "rows: " + std::to_string(cert.rows) + "\n";
    out += "cols: " + std::to_string(cert.cols) + "\n";
    out += "psi_degree: " + std::to_string(cert.psi_degree) + "\n";
    out += "raw_bound: " + std::to_string(cert.raw_bound) + "\n";
    out += "corrections: " + std::to_string(cert.corrections) + "\n";
    out += "bound: " + std::to_string(cert.bound) + "\n";
    out += "checks: nonzero_lambda=" + std::to_string(cert.checks.nonzero_lambda ? 1 : 0) +
           " nab_le_t=" + std::to_string(cert.checks.nab_le_t ? 1 : 0) +
           " p00_nonzero=" + std::to_string(cert.checks.p00_nonzero ? 1 : 0) +
           " system_solved=" + std::to_string(cert.checks.system_solved ? 1 : 0) +
           " point_vanishing_verified=" + std::to_string(cert.checks.point_vanishing_verified ? 1 : 0) + "\n";
    out += "lambda_count: " + std::to_string(cert.lambda.size()) + "\n";
    for (const auto& [abc, v] : cert.lambda)
        out += "lambda: " + std::to_string(abc[0]) + " " + std::to_string(abc[1]) + " " + std::to_string(abc[2]) +
               " " + std::to_string(v) + "\n";
    out += "end\n";
    return out;
}

namespace detail {

inline std::string cert_field(const std::string& line, const std::string& key) {
    std::string prefix = key + ": ";
    if (line.rfind(prefix, 0) != 0) throw Error("certificate: expected field '" + key + "', got: " + line);
    return line.substr(prefix.size());
}

}  // namespace detail

inline StepanovCertificate certificate_from_text(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    std::size_t li = 0;
    auto next = [&]() -> const std::string& {
        if (li >= lines.size()) throw Error("certificate: truncated document");
        return lines[li++];
    };
    if (next() != "cosetbound-certificate v1") throw Error("certificate: bad header");
    StepanovCertificate cert;
    cert.p = static_cast<std::uint32_t>(std::stoul(detail::cert_field(next(), "p")));
    cert.params.t = std::stoull(detail::cert_field(next(), "t"));
    cert.poly_text = detail::cert_field(next(), "poly");
    std::size_t npairs = std::stoul(detail::cert_field(next(), "pairs"));
    for (std::size_t i = 0; i < npairs; ++i) {
        std::string body = detail::cert_field(next(), "pair");
        std::size_t sp = body.find(' ');
        cert.pairs.emplace_back(static_cast<Elt>(std::stoul(body.substr(0, sp))),
                                static_cast<Elt>(std::stoul(body.substr(sp + 1))));
    }
    cert.params.m = static_cast<std::uint32_t>(std::stoul(detail::cert_field(next(), "m")));
    cert.params.n = static_cast<std::uint32_t>(std::stoul(detail::cert_field(next(), "n")));
    cert.params.h = static_cast<std::uint32_t>(std::stoul(detail::cert_field(next(), "h")));
    cert.params.A = std::stoull(detail::cert_field(next(), "A"));
    cert.params.B = std::stoull(detail::cert_field(next(), "B"));
    cert.params.C = std::stoull(detail::cert_field(next(), "C"));
    cert.params.D = std::stoull(detail::cert_field(next(), "D"));
    cert.rows = std::stoull(detail::cert_field(next(), "rows"));
    cert.cols = std::stoull(detail::cert_field(next(), "cols"));
    cert.psi_degree = std::stoull(detail::cert_field(next(), "psi_degree"));
    cert.raw_bound = std::stoull(detail::cert_field(next(), "raw_bound"));
    cert.corrections = std::stoull(detail::cert_field(next(), "corrections"));
    cert.bound = std::stoull(detail::cert_field(next(), "bound"));
    {
        std::string flags = detail::cert_field(next(), "checks");
        auto flag = [&](const std::string& name) {
            std::size_t at = flags.find(name + "=");
            if (at == std::string::npos) throw Error("certificate: missing check flag " + name);
            return flags[at + name.size() + 1] == '1';
        };
        cert.checks.nonzero_lambda = flag("nonzero_lambda");
        cert.checks.nab_le_t = flag("nab_le_t");
        cert.checks.p00_nonzero = flag("p00_nonzero");
        cert.checks.system_solved = flag("system_solved");
        cert.checks.point_vanishing_verified = flag("point_vanishing_verified");
    }
    std::size_t count = std::stoul(detail::cert_field(next(), "lambda_count"));
    for (std::size_t i = 0; i < count; ++i) {
        std::string body = detail::cert_field(next(), "lambda");
        std::array<std::uint32_t, 3> abc{};
        Elt v = 0;
        std::size_t cursor = 0;
        for (int f = 0; f < 4; ++f) {
            std::size_t sp = body.find(' ', cursor);
            std::string tok = body.substr(cursor, sp == std::string::npos ? std::string::npos : sp - cursor);
            if (f < 3)
                abc[static_cast<std::size_t>(f)] = static_cast<std::uint32_t>(std::stoul(tok));
            else
                v = static_cast<Elt>(std::stoul(tok));
            cursor = sp == std::string::npos ? body.size() : sp + 1;
        }
        cert.lambda.emplace_back(abc, v);
    }
    if (next() != "end") throw Error("certificate: missing end marker");
    return cert;
}

}  // namespace cosetbound

#endif  // COSETBOUND_STEPANOV_HPP
