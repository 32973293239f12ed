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

#include "cosetbound/modlinalg.hpp"
#include "cosetbound/rng.hpp"

using namespace cosetbound;

namespace {

MatFp random_matrix(const FieldCtx& f, std::size_t r, std::size_t c, SplitMix64& rng) {
    MatFp m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<Elt>(rng.below(f.p()));
    return m;
}

}  // namespace

TEST_CASE("nullspace worked examples", "[modlinalg]") {
    FieldCtx f(7);
    CHECK_FALSE(nullspace_vector(MatFp::from_rows(f, {{1, 0}, {0, 1}})).has_value());
    CHECK(nullspace_vector(MatFp::from_rows(f, {{1, 1}})).value() == std::vector<Elt>{1, 6});
    CHECK(nullspace_vector(MatFp::from_rows(f, {{0, 0, 0}})).value() == std::vector<Elt>{1, 0, 0});
}

TEST_CASE("rank worked examples", "[modlinalg]") {
    FieldCtx f(7);
    CHECK(rank(MatFp::from_rows(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 3);
    CHECK(rank(MatFp::from_rows(f, {{1, 2}, {2, 4}})) == 1);
    CHECK(rank(MatFp(f, 4, 5)) == 0);
}

TEST_CASE("kernel vectors satisfy M v = 0 and canonical form", "[modlinalg]") {
    FieldCtx f(10007);
    SplitMix64 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t r = 1 + rng.below(12);
        std::size_t c = 1 + rng.below(12);
        MatFp m = random_matrix(f, r, c, rng);
        auto v = nullspace_vector(m);
        std::size_t rk = rank(m);
        CHECK(v.has_value() == (rk < c));
        if (v) {
            auto mv = m.apply(*v);
            for (Elt x : mv) CHECK(x == 0);
            std::size_t first = 0;
            while (first < v->size() && (*v)[first] == 0) ++first;
            REQUIRE(first < v->size());
            CHECK((*v)[first] == 1);
            // deterministic: same input gives the identical vector
            CHECK(nullspace_vector(m).value() == *v);
        }
    }
}

TEST_CASE("wide matrices use the column-restricted solve", "[modlinalg]") {
    FieldCtx f(101);
    SplitMix64 rng(8);
    MatFp m = random_matrix(f, 6, 40, rng);
    auto v = nullspace_vector(m);
    REQUIRE(v.has_value());
    for (Elt x : m.apply(*v)) CHECK(x == 0);
    // support is confined to the leading rows+1 columns
    for (std::size_t j = 7; j < 40; ++j) CHECK((*v)[j] == 0);
}

TEST_CASE("memory limit is enforced", "[modlinalg]") {
    FieldCtx f(7);
    CHECK_THROWS_AS(MatFp(f, 1 << 20, 1 << 20), Overflow);
    CHECK_NOTHROW(MatFp(f, 10, 10, 100));
    CHECK_THROWS_AS(MatFp(f, 10, 11, 100), Overflow);
}
