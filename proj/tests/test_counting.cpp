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

#include <catch2/catch_amalgamated.hpp>

#include "cosetbound/counting.hpp"
#include "cosetbound/rng.hpp"

using namespace cosetbound;

namespace {

BiPoly random_bipoly(const FieldCtx& ctx, std::uint32_t mx, std::uint32_t my, SplitMix64& rng) {
    BiPoly f(ctx);
    for (std::uint32_t i = 0; i <= mx; ++i)
        for (std::uint32_t j = 0; j <= my; ++j)
            if (rng.below(3) != 0) f.set(i, j, static_cast<Elt>(rng.below(ctx.p())));
    return f;
}

}  // namespace

TEST_CASE("count_solutions worked examples", "[counting]") {
    FieldCtx f(7);
    Subgroup g = subgroup_of_order(f, 3);
    Coset c = make_coset(1, g);

    SolutionSet s = count_solutions(parse_poly("x - y + 1", f), c, c, CountMethod::naive);
    CHECK(s.points == std::vector<std::pair<Elt, Elt>>{{1, 2}});

    CHECK(count_solutions(parse_poly("x - y", f), c, c, CountMethod::naive).count() == 3);
    CHECK(count_solutions(BiPoly::constant(f, 5), c, c, CountMethod::rootfind).count() == 0);
    CHECK_THROWS_AS(count_solutions(BiPoly(f), c, c, CountMethod::naive), ZeroPolynomial);
}

TEST_CASE("naive and rootfind methods agree", "[counting]") {
    SplitMix64 outer(2024);
    for (int iter = 0; iter < 40; ++iter) {
        std::uint32_t p = 0;
        do {
            p = static_cast<std::uint32_t>(outer.range(100, 3000));
        } while (!is_prime_u64(p));
        FieldCtx f(p);
        auto divs = divisors(p - 1);
        std::vector<std::uint64_t> eligible;
        for (auto t : divs)
            if (t <= 60) eligible.push_back(t);
        Subgroup g = subgroup_of_order(f, static_cast<std::uint32_t>(eligible[outer.below(eligible.size())]));
        Coset c1 = make_coset(static_cast<Elt>(1 + outer.below(p - 1)), g);
        Coset c2 = make_coset(static_cast<Elt>(1 + outer.below(p - 1)), g);
        BiPoly poly = random_bipoly(f, 3, 3, outer);
        if (poly.is_zero()) continue;
        SolutionSet a = count_solutions(poly, c1, c2, CountMethod::naive);
        SolutionSet b = count_solutions(poly, c1, c2, CountMethod::rootfind, iter);
        CHECK(a.points == b.points);
    }
}

TEST_CASE("count_family worked examples and invariants", "[counting]") {
    FieldCtx f(31);
    Subgroup g = subgroup_of_order(f, 5);
    BiPoly poly = parse_poly("x^2 + 3*x*y + y^2", f);

    SECTION("h = 1 with l = gamma matches count_solutions") {
        Elt gamma = 7;
        FamilyCount fc = count_family(poly, gamma, {gamma}, g);
        Coset c = make_coset(1, g);
        SolutionSet direct = count_solutions(poly - BiPoly::constant(f, gamma), c, c, CountMethod::naive);
        REQUIRE(fc.per_equation.size() == 1);
        CHECK(fc.mus[0] == 1);
        CHECK(fc.total == direct.count());
    }

    SECTION("multi-equation totals match exhaustive counts and are order-invariant") {
        // Pick l_i = gamma * v^2 in pairwise distinct cosets.
        Elt gamma = 3;
        std::vector<Elt> ls;
        for (Elt v = 1; v < f.p() && ls.size() < 3; ++v) {
            Elt cand = f.mul(gamma, f.mul(v, v));
            bool fresh = true;
            for (Elt prev : ls)
                if (f.pow(f.mul(cand, f.inv(prev)), g.t) == 1) fresh = false;
            if (fresh) ls.push_back(cand);
        }
        REQUIRE(ls.size() == 3);
        FamilyCount fc = count_family(poly, gamma, ls, g);
        std::uint64_t expect = 0;
        for (Elt l : ls) {
            std::uint64_t cnt = 0;
            for (Elt x : g.elements)
                for (Elt y : g.elements)
                    if (poly.eval(x, y) == l) ++cnt;
            expect += cnt;
        }
        CHECK(fc.total == expect);

        std::vector<Elt> shuffled = {ls[2], ls[0], ls[1]};
        CHECK(count_family(poly, gamma, shuffled, g).total == fc.total);
    }

    SECTION("error paths") {
        CHECK_THROWS_AS(count_family(parse_poly("x^2 + y", f), 3, {3}, g), NotHomogeneous);
        CHECK_THROWS_AS(count_family(parse_poly("x*y", f), 3, {3}, g), PrecondViolated);
        // 3 and 3*g share a coset for any g in G
        CHECK_THROWS_AS(count_family(poly, 3, {3, f.mul(3, g.elements[1])}, g), CosetCollision);
        // quadratic non-residue ratio: l/gamma has no square root
        Elt nr = 0;
        for (Elt v = 2; v < f.p(); ++v)
            if (f.pow(v, (f.p() - 1) / 2) != 1) {
                nr = v;
                break;
            }
        CHECK_THROWS_AS(count_family(poly, 1, {nr}, g), RootMissing);
    }
}

TEST_CASE("additive energy worked examples", "[counting]") {
    FieldCtx f(7);
    CHECK(additive_energy(f, {1, 2}, {1, 2}) == 6);
    CHECK(additive_energy(f, {3}, {5}) == 1);
    SplitMix64 rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        std::set<Elt> a;
        for (int k = 0; k < 4; ++k) a.insert(static_cast<Elt>(rng.below(7)));
        mpz_class e = additive_energy(f, a, a);
        CHECK(e >= mpz_class(static_cast<unsigned long>(a.size() * a.size())));
    }
}

TEST_CASE("polynomial energy worked examples", "[counting]") {
    FieldCtx f(7);
    Subgroup g = subgroup_of_order(f, 3);
    BiPoly poly = parse_poly("x + y", f);
    CHECK(polynomial_energy(poly, g, 1) == 9);  // q=1 is always t^2
    CHECK(polynomial_energy(poly, g, 2) == 15);
}

TEST_CASE("q=2 energy equals direct 4-tuple enumeration", "[counting]") {
    SplitMix64 rng(77);
    for (std::uint32_t p : {7u, 13u, 29u}) {
        FieldCtx f(p);
        for (std::uint64_t t : divisors(p - 1)) {
            if (t > 8) continue;
            Subgroup g = subgroup_of_order(f, static_cast<std::uint32_t>(t));
            for (int iter = 0; iter < 5; ++iter) {
                BiPoly poly = random_bipoly(f, 2, 2, rng);
                if (poly.is_zero()) continue;
                std::uint64_t quadruples = 0;
                for (Elt x1 : g.elements)
                    for (Elt y1 : g.elements)
                        for (Elt x2 : g.elements)
                            for (Elt y2 : g.elements)
                                if (poly.eval(x1, y1) == poly.eval(x2, y2)) ++quadruples;
                mpz_class e2 = polynomial_energy(poly, g, 2);
                CHECK(e2 == mpz_class(static_cast<unsigned long>(quadruples)));
                CHECK(e2 >= mpz_class(static_cast<unsigned long>(t * t)));  // diagonal quadruples
            }
        }
    }
}

TEST_CASE("composed energy basics", "[counting]") {
    FieldCtx f(13);
    Subgroup g = subgroup_of_order(f, 4);
    UniPoly id(f, {0, 1});
    std::set<Elt> gset(g.elements.begin(), g.elements.end());
    CHECK(composed_energy(id, id, g) == additive_energy(f, gset, gset));

    UniPoly f2(f, {0, 0, 1});  // x^2
    UniPoly f3(f, {0, 0, 0, 1});  // x^3
    std::set<Elt> im2, im3;
    for (Elt x : g.elements) {
        im2.insert(f2.eval(x));
        im3.insert(f3.eval(x));
    }
    std::uint64_t quadruples = 0;
    for (Elt a : im2)
        for (Elt b : im3)
            for (Elt c : im2)
                for (Elt d : im3)
                    if (f.add(a, b) == f.add(c, d)) ++quadruples;
    CHECK(composed_energy(f2, f3, g) == mpz_class(static_cast<unsigned long>(quadruples)));
    CHECK_THROWS_AS(composed_energy(UniPoly::constant(f, 2), id, g), PrecondViolated);

    // x^4 collapses the order-4 subgroup to {1}: singleton images give E = 1
    UniPoly collapse(f, {0, 0, 0, 0, 1});
    CHECK(composed_energy(collapse, collapse, g) == 1);
}
