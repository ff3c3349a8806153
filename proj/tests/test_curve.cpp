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

#include "cycdesc/curve.hpp"

using namespace cycdesc;

namespace {
const FieldSpec Q = FieldSpec::rationals();

CurveSpec sextic() { return curve_make(2, Poly::from_int_coeffs(Q, {1, 0, 1, 0, 1, 0, 1})); }
}  // namespace

TEST_CASE("curve validation and genus") {
    CurveSpec c = sextic();
    CHECK(c.genus == 2);
    CHECK(c.d == 6);

    // (x (x-1) (x+1))^2 = x^6 - 2x^4 + x^2, cube-free, with p = 3.
    Poly f = Poly::from_int_coeffs(Q, {0, 0, 1, 0, -2, 0, 1});
    CurveSpec e = curve_make(3, f);
    CHECK(e.genus == 1);
    CHECK(e.d == 3);

    FieldSpec Z3 = FieldSpec::cyclotomic(3);
    CurveSpec ez = curve_make(3, Poly::from_int_coeffs(Z3, {0, 0, 1, 0, -2, 0, 1}));
    CHECK(ez.genus == 1);
    CHECK(ez.d == 3);

    CHECK_THROWS_AS(curve_make(2, Poly::from_int_coeffs(Q, {1, 0, 0, 0, 0, 1})),
                    DegreeNotDivisible);
}

TEST_CASE("genus invariant on random accepted curves") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> cu(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        int p = trial % 2 ? 2 : 3;
        int deg = p * (1 + static_cast<int>(rng() % 3));
        std::vector<long> cs(static_cast<size_t>(deg) + 1);
        for (auto& x : cs) x = cu(rng);
        cs.back() = 1;
        try {
            CurveSpec c = curve_make(p, Poly::from_int_coeffs(Q, cs));
            CHECK(2 * c.genus == (c.d - 2) * (p - 1));
            CHECK(c.d >= 1);
        } catch (const MathError&) {
            continue;  // p-power-free or divisibility rejection is fine
        }
    }
}

TEST_CASE("divisor validation") {
    CurveSpec c = sextic();
    // y = x + 1 on the locus x^2 = x: f(0) = 1 = 1^2, f(1) = 4 = 2^2.
    auto h = DivisorComponent::horizontal(Poly::from_int_coeffs(Q, {0, -1, 1}),
                                          Poly::from_int_coeffs(Q, {1, 1}));
    GoodDivisor D = divisor_make(c, {{h, 1}});
    CHECK(D.degree() == 2);

    // f(2) = 85, so z^2 - 85 cuts the full fiber over x = 2.
    auto fb = DivisorComponent::fiber(FieldElem::from_int(Q, 2),
                                      Poly::from_int_coeffs(Q, {-85, 0, 1}));
    CHECK(divisor_make(c, {{fb, 1}}).degree() == 2);
    CHECK(divisor_make(c, {{h, 2}, {fb, -1}}).degree() == 2);

    // x^2 + 1 divides f, so its locus is ramified.
    auto bad = DivisorComponent::horizontal(Poly::from_int_coeffs(Q, {1, 0, 1}), Poly(Q));
    CHECK_THROWS_AS(divisor_make(c, {{bad, 1}}), NotGood);

    // y-value mismatch: f(0) = 1 but b(0) = 0.
    auto off = DivisorComponent::horizontal(Poly::from_int_coeffs(Q, {0, -1, 1}),
                                            Poly::from_int_coeffs(Q, {0, 1}));
    CHECK_THROWS_AS(divisor_make(c, {{off, 1}}), NotOnCurve);

    // z - 1 does not divide z^2 - 85.
    auto badf = DivisorComponent::fiber(FieldElem::from_int(Q, 2),
                                        Poly::from_int_coeffs(Q, {-1, 1}));
    CHECK_THROWS_AS(divisor_make(c, {{badf, 1}}), BadFiberFactor);
}

TEST_CASE("fiber divisors") {
    CurveSpec c = sextic();
    GoodDivisor d0 = fiber_divisor(c, FieldElem::zero(Q));
    CHECK(d0.degree() == 2);
    CHECK(d0.terms().size() == 2);  // f(0) = 1 is a square: z-1 and z+1
    for (const auto& [comp, n] : d0.terms()) {
        CHECK(n == 1);
        CHECK(comp.m().degree() == 1);
    }

    GoodDivisor d2 = fiber_divisor(c, FieldElem::from_int(Q, 2));
    CHECK(d2.degree() == 2);
    CHECK(d2.terms().size() == 1);  // 85 is not a rational square
    CHECK(d2.terms()[0].first.m() == Poly::from_int_coeffs(Q, {-85, 0, 1}));

    Poly f = Poly::from_int_coeffs(Q, {0, 0, 1, 0, -2, 0, 1});
    CurveSpec e = curve_make(3, f);
    CHECK_THROWS_AS(fiber_divisor(e, FieldElem::one(Q)), RamifiedFiber);
}

TEST_CASE("evaluating functions on divisors") {
    CurveSpec c = sextic();
    auto h = DivisorComponent::horizontal(Poly::from_int_coeffs(Q, {0, -1, 1}),
                                          Poly::from_int_coeffs(Q, {1, 1}));
    GoodDivisor D = divisor_make(c, {{h, 1}});

    // x - 2 takes the values -2 and -1 on the two points.
    FunctionRep xm2 = function_from_x(c, Poly::from_int_coeffs(Q, {-2, 1}),
                                      Poly::constant(FieldElem::one(Q)));
    CHECK(eval_function_on_divisor(xm2, D) == FieldElem::from_int(Q, 2));

    // y takes the values b(0) = 1 and b(1) = 2.
    CHECK(eval_function_on_divisor(function_y(c), D) == FieldElem::from_int(Q, 2));

    // x vanishes at one point of D.
    FunctionRep x = function_from_x(c, Poly::x(Q), Poly::constant(FieldElem::one(Q)));
    CHECK_THROWS_AS(eval_function_on_divisor(x, D), SupportOverlap);

    GoodDivisor empty(c, {});
    CHECK(eval_function_on_divisor(x, empty) == FieldElem::one(Q));

    // Negative multiplicity inverts the value.
    GoodDivisor Dm = divisor_make(c, {{h, -1}});
    CHECK(eval_function_on_divisor(xm2, Dm) == FieldElem::parse(Q, "1/2"));
}

TEST_CASE("evaluation is multiplicative in both arguments") {
    CurveSpec c = sextic();
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> cu(2, 40);
    auto hcomp = DivisorComponent::horizontal(Poly::from_int_coeffs(Q, {0, -1, 1}),
                                              Poly::from_int_coeffs(Q, {1, 1}));
    GoodDivisor DH = divisor_make(c, {{hcomp, 1}});
    for (int trial = 0; trial < 25; ++trial) {
        long r1 = cu(rng), r2 = cu(rng), r3 = cu(rng);
        FunctionRep h1 = function_from_x(c, Poly::from_int_coeffs(Q, {-r1, 1}),
                                         Poly::from_int_coeffs(Q, {-r2, 1}));
        FunctionRep h2 = function_mul(function_y(c),
                                      function_from_x(c, Poly::from_int_coeffs(Q, {-r3, 1}),
                                                      Poly::constant(FieldElem::one(Q))));
        GoodDivisor D1 = fiber_divisor(c, FieldElem::from_int(Q, cu(rng) + 100));
        GoodDivisor D2 = DH + fiber_divisor(c, FieldElem::from_int(Q, cu(rng) + 200));
        FieldElem a1 = eval_function_on_divisor(h1, D1);
        FieldElem a2 = eval_function_on_divisor(h2, D1);
        FieldElem a12 = eval_function_on_divisor(function_mul(h1, h2), D1);
        CHECK(a12 == a1 * a2);
        FieldElem b1 = eval_function_on_divisor(h1, D2);
        FieldElem bb = eval_function_on_divisor(h1, D1 + D2);
        CHECK(bb == a1 * b1);
    }
}

TEST_CASE("values at infinity") {
    CurveSpec c = sextic();
    auto frac = [&](std::vector<long> n, std::vector<long> d) {
        return function_from_x(c, Poly::from_int_coeffs(Q, n), Poly::from_int_coeffs(Q, d));
    };
    CHECK(eval_at_infinity(frac({-2, 1}, {-3, 1})) == FieldElem::one(Q));
    CHECK(eval_at_infinity(frac({-1, 2}, {-5, 1})) == FieldElem::from_int(Q, 4));

    // y / x^3: the two branches carry the two square roots of lc(f) = 1.
    FunctionRep yx3 = function_make(c, {Poly(Q), Poly::constant(FieldElem::one(Q))},
                                    {Poly::from_int_coeffs(Q, {0, 0, 0, 1})});
    CHECK(eval_at_infinity(yx3) == FieldElem::from_int(Q, -1));

    // x alone has a pole above infinity.
    CHECK_THROWS_AS(eval_at_infinity(frac({0, 1}, {1})), PoleAtInfinity);

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> cu(2, 30);
    for (int trial = 0; trial < 25; ++trial) {
        FunctionRep h1 = frac({-cu(rng), 1}, {-cu(rng), 1});
        FunctionRep h2 = frac({cu(rng), 0, 3}, {-cu(rng), cu(rng), 1});
        CHECK(eval_at_infinity(function_mul(h1, h2)) ==
              eval_at_infinity(h1) * eval_at_infinity(h2));
    }
}

TEST_CASE("the value-one-at-infinity predicate") {
    CurveSpec c = sextic();
    auto frac = [&](std::vector<long> n, std::vector<long> d) {
        return function_from_x(c, Poly::from_int_coeffs(Q, n), Poly::from_int_coeffs(Q, d));
    };
    CHECK(is_omm(frac({-2, 1}, {-3, 1})));
    CHECK(is_omm(frac({-5, 1}, {-7, 1})));
    CHECK_FALSE(is_omm(frac({2}, {1})));
    CHECK_THROWS_AS(is_omm(frac({0, 1}, {1})), PoleAtInfinity);
}

TEST_CASE("Weil reciprocity for x-line fractions") {
    CurveSpec c = sextic();
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<long> cu(2, 120);
    int done = 0;
    while (done < 50) {
        long r1 = cu(rng), r2 = cu(rng), r3 = cu(rng), r4 = cu(rng);
        if (r1 == r2 || r1 == r3 || r1 == r4 || r2 == r3 || r2 == r4 || r3 == r4) continue;
        FunctionRep g = function_from_x(c, Poly::from_int_coeffs(Q, {-r1, 1}),
                                        Poly::from_int_coeffs(Q, {-r2, 1}));
        FunctionRep h = function_from_x(c, Poly::from_int_coeffs(Q, {-r3, 1}),
                                        Poly::from_int_coeffs(Q, {-r4, 1}));
        GoodDivisor divg = fiber_divisor(c, FieldElem::from_int(Q, r1)) -
                           fiber_divisor(c, FieldElem::from_int(Q, r2));
        GoodDivisor divh = fiber_divisor(c, FieldElem::from_int(Q, r3)) -
                           fiber_divisor(c, FieldElem::from_int(Q, r4));
        CHECK(eval_function_on_divisor(g, divh) == eval_function_on_divisor(h, divg));
        ++done;
    }
}
