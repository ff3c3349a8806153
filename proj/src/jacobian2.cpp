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

#include "cycdesc/jacobian2.hpp"

#include <string>

namespace cycdesc {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw MathError("internal: expected exact polynomial division");
    return q;
}

}  // namespace

std::string MumfordClass::to_string() const {
    return "M " + a_.to_pretty_string() + " ; " + b_.to_pretty_string();
}

MumfordClass mumford_make(const CurveSpec& curve, Poly a, Poly b) {
    const auto& alg = curve.algebra;
    const FieldSpec& spec = alg->base;
    if (alg->p != 2) throw MathError("Mumford arithmetic is implemented for p = 2 only");
    if (a.is_zero() || a.lc() != FieldElem::one(spec))
        throw NotGood("Mumford a must be monic");
    if (a.degree() % 2 != 0) throw NotGood("Mumford a must have even degree");
    b = b % a;
    if (!((b * b - alg->f) % a).is_zero())
        throw NotOnCurve("b^2 differs from f mod a");
    if (a.degree() > 0 && gcd(a, alg->f0m).degree() != 0)
        throw NotGood("a shares a root with f: " + a.to_pretty_string());
    return MumfordClass(curve, std::move(a), std::move(b));
}

MumfordClass mumford_identity(const CurveSpec& curve) {
    const FieldSpec& spec = curve.algebra->base;
    return mumford_make(curve, Poly::constant(FieldElem::one(spec)), Poly(spec));
}

MumfordClass mumford_negate(const MumfordClass& A) {
    return mumford_make(A.curve(), A.a(), -A.b());
}

MumfordClass cantor_add(const MumfordClass& A, const MumfordClass& B) {
    const auto& alg = A.curve().algebra;
    const FieldSpec& spec = alg->base;
    const Poly& f = alg->f;

    // Composition: d = gcd(a1, a2, b1 + b2) = s1 a1 + s2 a2 + s3 (b1 + b2).
    XgcdResult g1 = xgcd(A.a(), B.a());
    XgcdResult g2 = xgcd(g1.g, A.b() + B.b());
    Poly d = g2.g;
    Poly s1 = g2.u * g1.u, s2 = g2.u * g1.v, s3 = g2.v;
    Poly a = exact_div(A.a() * B.a(), d * d);
    Poly num = s1 * A.a() * B.b() + s2 * B.a() * A.b() + s3 * (A.b() * B.b() + f);
    Poly b = exact_div(num, d) % a;

    // Balanced reduction via division by (y - b): needs the weighted leading
    // form of y - b to stay away from the two points at infinity, i.e. the
    // x^3-coefficient of b must not square to lc(f).
    int guard = 0;
    while (a.degree() > 2) {
        if (++guard > 8) throw NonGoodIntermediate("reduction did not terminate");
        FieldElem b3 = b.degree() >= 3 ? b.coeff(3) : FieldElem::zero(spec);
        if (b.degree() > 3 || b3 * b3 == alg->c)
            throw NonGoodIntermediate("leading form of y - b vanishes at infinity");
        Poly g = f - b * b;
        if (g.is_zero() || g.degree() != alg->degf)
            throw NonGoodIntermediate("deg(f - b^2) dropped");
        Poly anew = exact_div(g, a).monic();
        if (gcd(anew, alg->f0m).degree() != 0)
            throw NonGoodIntermediate("reduced support meets the ramification locus");
        b = (-b) % anew;
        a = std::move(anew);
    }
    return mumford_make(A.curve(), std::move(a), std::move(b));
}

GoodDivisor mumford_divisor(const MumfordClass& A) {
    std::vector<std::pair<DivisorComponent, int>> terms;
    if (!A.is_identity()) {
        for (const auto& [s, mult] : squarefree_decompose(A.a()).parts)
            terms.emplace_back(DivisorComponent::horizontal(s, A.b() % s), mult);
    }
    return divisor_make(A.curve(), std::move(terms));
}

GammaElem mumford_descent_elem(const MumfordClass& A) {
    return descent_elem(mumford_divisor(A));
}

Verdict homomorphism_check(const MumfordClass& A, const MumfordClass& B, int prime_budget,
                           std::uint64_t seed) {
    MumfordClass C = cantor_add(A, B);
    GammaElem lhs = mumford_descent_elem(A) * mumford_descent_elem(B);
    GammaClass cl(lhs, ClassModulus::ChiIota);
    GammaClass cr(mumford_descent_elem(C), ClassModulus::ChiIota);
    return class_eq(cl, cr, prime_budget, seed);
}

MumfordClass random_good_class(const CurveSpec& curve, std::mt19937_64& rng) {
    const auto& alg = curve.algebra;
    const FieldSpec& spec = alg->base;
    std::uniform_int_distribution<long> cu(-3, 3);
    for (int attempt = 0; attempt < 200; ++attempt) {
        // Over Q keep deg b <= 2 so f - b^2 stays monic and the factors (and
        // hence the class group supports) stay integral and small.
        std::vector<long> bc(spec.kind() == FieldKind::Rationals ? 3 : 4);
        for (auto& x : bc) x = cu(rng);
        Poly b = Poly::from_int_coeffs(spec, bc);
        Poly g = alg->f - b * b;
        if (g.is_zero()) continue;
        std::vector<Poly> linear, quadratic;
        if (spec.kind() == FieldKind::Rationals) {
            for (const auto& [h, mult] : factor_over_Q(g).parts)
                for (int i = 0; i < mult; ++i)
                    (h.degree() == 1 ? linear : quadratic).push_back(h.monic());
        } else if (spec.kind() == FieldKind::FinitePrime) {
            for (const auto& [h, mult] : factor_mod_q(g, rng())) {
                for (int i = 0; i < mult; ++i)
                    (h.degree() == 1 ? linear : quadratic).push_back(h);
            }
        } else {
            throw MathError("random class generation needs Q or a prime field");
        }
        Poly a(spec);
        for (const auto& h : quadratic)
            if (h.degree() == 2 && gcd(h, alg->f0m).degree() == 0) { a = h; break; }
        if (a.is_zero() && linear.size() >= 2) {
            Poly cand = linear[0] * linear[rng() % (linear.size() - 1) + 1];
            if (gcd(cand, alg->f0m).degree() == 0) a = cand;
        }
        if (a.is_zero()) continue;
        return mumford_make(curve, a, b % a);
    }
    throw MathError("no good Mumford class found within the sample budget");
}

}  // namespace cycdesc
