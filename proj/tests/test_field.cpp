/*
   Copyright 2026 The cycdesc authors

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cycdesc/field.hpp"

using namespace cycdesc;

TEST_CASE("rational arithmetic is exact") {
    auto Q = FieldSpec::rationals();
    auto a = FieldElem::parse(Q, "2/3");
    auto b = FieldElem::parse(Q, "1/6");
    CHECK((a + b) == FieldElem::parse(Q, "5/6"));
    CHECK((a * b) == FieldElem::parse(Q, "1/9"));
    CHECK((a / b) == FieldElem::from_int(Q, 4));
    CHECK((a - a).is_zero());
}

TEST_CASE("finite field canonical residues") {
    auto F5 = FieldSpec::finite_prime(5);
    auto a = FieldElem::from_int(F5, 7);
    CHECK(a == FieldElem::from_int(F5, 2));
    CHECK((-a) == FieldElem::from_int(F5, 3));
    CHECK((a.inverse() * a).is_one());
    CHECK_THROWS_AS(FieldElem::zero(F5).inverse(), DivisionByZero);
}

TEST_CASE("primitive roots of unity") {
    CHECK(primitive_pth_root(FieldSpec::finite_prime(5), 2) == FieldElem::from_int(FieldSpec::finite_prime(5), 4));
    auto z3 = FieldSpec::cyclotomic(3);
    auto z = primitive_pth_root(z3, 3);
    CHECK((z * z * z).is_one());
    CHECK(!z.is_one());
    CHECK_THROWS_AS(primitive_pth_root(FieldSpec::rationals(), 3), NoPthRoot);
    // F_7 has mu_3; smallest residue of order 3 is 2 (2^3 = 8 = 1).
    auto F7 = FieldSpec::finite_prime(7);
    CHECK(primitive_pth_root(F7, 3) == FieldElem::from_int(F7, 2));
}

TEST_CASE("cyclotomic inverse") {
    auto z5 = FieldSpec::cyclotomic(5);
    auto z = primitive_pth_root(z5, 5);
    auto e = z + FieldElem::from_int(z5, 2);
    CHECK((e * e.inverse()).is_one());
    CHECK((z.pow(5)).is_one());
    CHECK(z.pow(-1) == z.pow(4));
}

TEST_CASE("rational reconstruction examples") {
    CHECK(*rational_reconstruct(2, 101) == mpq_class(2));
    CHECK(*rational_reconstruct(51, 101) == mpq_class(1, 2));
    CHECK(*rational_reconstruct(50, 101) == mpq_class(-1, 2));
}

TEST_CASE("rational reconstruction round-trips random small fractions") {
    std::mt19937_64 rng(12345);
    auto Q = FieldSpec::rationals();
    (void)Q;
    int done = 0;
    while (done < 200) {
        mpz_class m = 10007 + 2 * static_cast<long>(rng() % 5000);
        if (!is_prime(m)) continue;
        mpz_class bound;
        mpz_class half = m / 2;
        mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
        long B = bound.get_si();
        long a = static_cast<long>(rng() % (2 * B + 1)) - B;
        long b = 1 + static_cast<long>(rng() % B);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(b).get_mpz_t());
        if (g != 1) continue;
        mpz_class binv;
        if (mpz_invert(binv.get_mpz_t(), mpz_class(b).get_mpz_t(), m.get_mpz_t()) == 0) continue;
        mpz_class r = mpz_class(a) * binv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        auto rec = rational_reconstruct(r, m);
        REQUIRE(rec.has_value());
        CHECK(*rec == mpq_class(a, b));
        ++done;
    }
}
