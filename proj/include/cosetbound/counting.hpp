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

#ifndef COSETBOUND_COUNTING_HPP
#define COSETBOUND_COUNTING_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bipoly.hpp"
#include "errors.hpp"
#include "ffield.hpp"
#include "unipoly.hpp"

namespace cosetbound {

enum class CountMethod { naive, rootfind };

inline std::string to_string(CountMethod m) { return m == CountMethod::naive ? "naive" : "rootfind"; }

/// Exact solution set of P(x,y) = 0 restricted to a coset pair. Points are
/// kept (sorted) because certificate verification needs them.
struct SolutionSet {
    std::vector<std::pair<Elt, Elt>> points;
    CountMethod method;

    std::size_t count() const noexcept { return points.size(); }
};

namespace detail {

/// Membership test with the representative inverse precomputed.
struct CosetTester {
    const FieldCtx& ctx;
    Elt inv_rep;
    std::uint32_t t;

    explicit CosetTester(const Coset& c) : ctx(c.sub.ctx), inv_rep(ctx.inv(c.rep)), t(c.sub.t) {}

    bool contains(Elt x) const noexcept { return x != 0 && ctx.pow(ctx.mul(x, inv_rep), t) == 1; }
};

}  // namespace detail

/// Exact count of {(x,y) : P(x,y) = 0, x in c1, y in c2}. The naive method
/// scans all t^2 pairs; rootfind solves the univariate specialization per x
/// and filters roots by coset membership. Both give identical results.
inline SolutionSet count_solutions(const BiPoly& poly, const Coset& c1, const Coset& c2, CountMethod method,
                                   std::uint64_t seed = 0x5eedULL) {
    if (poly.is_zero()) throw ZeroPolynomial("count_solutions of the zero polynomial");
    if (c1.sub.t != c2.sub.t || c1.sub.ctx != c2.sub.ctx || c1.sub.gen != c2.sub.gen)
        throw PrecondViolated("cosets must share one subgroup");
    SolutionSet out{{}, method};
    std::vector<Elt> xs = c1.elements();
    if (method == CountMethod::naive) {
        std::vector<Elt> ys = c2.elements();
        for (Elt x0 : xs) {
            UniPoly spec = poly.specialize_x(x0);
            for (Elt y0 : ys)
                if (spec.eval(y0) == 0) out.points.emplace_back(x0, y0);
        }
    } else {
        detail::CosetTester tester(c2);
        std::vector<Elt> ys;
        for (Elt x0 : xs) {
            UniPoly spec = poly.specialize_x(x0);
            if (spec.is_zero()) {
                if (ys.empty()) ys = c2.elements();
                for (Elt y0 : ys) out.points.emplace_back(x0, y0);
                continue;
            }
            for (Elt y0 : uni_roots(spec, seed))
                if (tester.contains(y0)) out.points.emplace_back(x0, y0);
        }
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

/// One family sweep row: the equations P = l_i counted directly and through
/// the mu-scaled reduction to P = gamma on the coset mu^-1 G.
struct FamilyCount {
    Elt gamma;
    std::vector<Elt> mus;
    std::vector<std::uint64_t> per_equation;
    std::uint64_t total = 0;
};

/// Counts solutions of the family P(x,y) = l_i with x,y in G, both directly
/// and via the scaling x -> x/mu_i, y -> y/mu_i that turns each equation
/// into P = gamma on the coset mu_i^-1 G. The two counts must agree; a
/// mismatch is a hard error since it would falsify the reduction itself.
inline FamilyCount count_family(const BiPoly& poly, Elt gamma, const std::vector<Elt>& ls, const Subgroup& sub,
                                CountMethod method = CountMethod::rootfind, std::uint64_t seed = 0x5eedULL) {
    const FieldCtx& ctx = sub.ctx;
    long n = poly.total_degree();
    if (n < 1 || !poly.is_homogeneous(static_cast<std::uint32_t>(n)))
        throw NotHomogeneous("count_family requires a homogeneous polynomial of degree >= 1");
    if (gamma == 0) throw ZeroElement("gamma must be nonzero");
    if (poly.coeff(static_cast<std::uint32_t>(n), 0) == 0)
        throw PrecondViolated("deg P(x,0) >= 1 fails: the x^n coefficient vanishes");
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == 0) throw ZeroElement("l_" + std::to_string(i) + " must be nonzero");
    for (std::size_t i = 0; i < ls.size(); ++i)
        for (std::size_t j = i + 1; j < ls.size(); ++j)
            if (ctx.pow(ctx.mul(ls[i], ctx.inv(ls[j])), sub.t) == 1)
                throw CosetCollision("l_" + std::to_string(i) + " and l_" + std::to_string(j) +
                                     " lie in the same coset of G");

    FamilyCount out;
    out.gamma = gamma;
    Coset base = make_coset(1, sub);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        auto mu = nth_root(ctx, ctx.mul(ls[i], ctx.inv(gamma)), static_cast<std::uint64_t>(n));
        if (!mu)
            throw RootMissing("l_" + std::to_string(i) + "/gamma has no " + std::to_string(n) + "-th root");
        out.mus.push_back(*mu);

        BiPoly direct_poly = poly - BiPoly::constant(ctx, ls[i]);
        SolutionSet direct = count_solutions(direct_poly, base, base, method, seed);

        Coset scaled_coset = make_coset(ctx.inv(*mu), sub);
        BiPoly scaled_poly = poly - BiPoly::constant(ctx, gamma);
        SolutionSet scaled = count_solutions(scaled_poly, scaled_coset, scaled_coset, method, seed);

        if (direct.count() != scaled.count())
            throw Error("scaled and direct counts disagree for l_" + std::to_string(i));
        out.per_equation.push_back(direct.count());
        out.total += direct.count();
    }
    return out;
}

/// Additive energy E(A,B) = #{(x1,y1,x2,y2) : x1+y1 = x2+y2}, computed as
/// the sum of squared fiber sizes of the sum map.
inline mpz_class additive_energy(const FieldCtx& ctx, const std::set<Elt>& a, const std::set<Elt>& b) {
    std::unordered_map<Elt, std::uint64_t> fibers;
    fibers.reserve(a.size() + b.size());
    for (Elt x : a)
        for (Elt y : b) ++fibers[ctx.add(x, y)];
    mpz_class total = 0;
    for (const auto& [c, m] : fibers) {
        (void)c;
        mpz_class mm(static_cast<unsigned long>(m));
        total += mm * mm;
    }
    return total;
}

/// Fiber histogram of P over G x G: value -> #{(x,y) in G x G : P(x,y) = value}.
inline std::map<Elt, std::uint64_t> fiber_histogram(const BiPoly& poly, const Subgroup& g) {
    std::map<Elt, std::uint64_t> fibers;
    for (Elt x0 : g.elements) {
        UniPoly spec = poly.specialize_x(x0);
        for (Elt y0 : g.elements) ++fibers[spec.eval(y0)];
    }
    return fibers;
}

/// Polynomial energy E_P^q(G) = sum_c m(c)^q over the fiber histogram.
inline mpz_class polynomial_energy(const BiPoly& poly, const Subgroup& g, unsigned q) {
    if (q < 1) throw Error("polynomial_energy requires q >= 1");
    mpz_class total = 0;
    for (const auto& [c, m] : fiber_histogram(poly, g)) {
        (void)c;
        mpz_class term;
        mpz_pow_ui(term.get_mpz_t(), mpz_class(static_cast<unsigned long>(m)).get_mpz_t(), q);
        total += term;
    }
    return total;
}

/// E(f(G), g(G)) on the image sets (duplicates collapsed).
inline mpz_class composed_energy(const UniPoly& f, const UniPoly& g, const Subgroup& sub) {
    if (f.degree() < 1 || g.degree() < 1) throw PrecondViolated("composed_energy requires nonconstant f and g");
    std::set<Elt> fa, gb;
    for (Elt x : sub.elements) {
        fa.insert(f.eval(x));
        gb.insert(g.eval(x));
    }
    return additive_energy(sub.ctx, fa, gb);
}

}  // namespace cosetbound

#endif  // COSETBOUND_COUNTING_HPP
