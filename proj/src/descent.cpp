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

#include "cycdesc/descent.hpp"

#include <cstdlib>

namespace cycdesc {

EtaleElem eval_x_minus_T(const GoodDivisor& D) {
    const auto& alg = D.curve().algebra;
    const FieldSpec& spec = alg->base;
    EtaleElem out = EtaleElem::one(alg);
    for (const auto& [comp, mult] : D.terms()) {
        EtaleElem v = EtaleElem::one(alg);
        if (comp.kind() == DivisorComponent::Kind::Horizontal) {
            // prod over roots x_i of a of (x_i - T) = (-1)^{deg a} a(T).
            EtaleElem aT(alg, comp.a());
            if (comp.a().degree() % 2 != 0) aT = -aT;
            v = aT;
        } else {
            EtaleElem rT = EtaleElem::scalar(alg, comp.r()) - EtaleElem::T(alg);
            v = rT.pow(comp.m().degree());
        }
        (void)spec;
        v = mult < 0 ? v.inverse().pow(-mult) : v.pow(mult);
        out = out * v;
    }
    return out;
}

FieldElem eval_gamma_y(const GoodDivisor& D) {
    const auto& alg = D.curve().algebra;
    const FieldSpec& spec = alg->base;
    int deg = D.degree();
    if (deg % alg->p != 0) throw DegreeNotDivisible();
    FieldElem out = alg->c.pow(-(deg / alg->p));
    for (const auto& [comp, mult] : D.terms()) {
        FieldElem v = FieldElem::one(spec);
        if (comp.kind() == DivisorComponent::Kind::Horizontal) {
            v = resultant(comp.a(), comp.b());
        } else {
            v = comp.m().coeff(0);
            if (comp.m().degree() % 2 != 0) v = -v;
        }
        if (mult < 0) v = v.inverse();
        for (int i = 0; i < std::abs(mult); ++i) out = out * v;
    }
    return out;
}

GammaElem descent_elem(const GoodDivisor& D) {
    return gamma_make(eval_x_minus_T(D), eval_gamma_y(D));
}

GammaClass descent_class(const GoodDivisor& D, ClassModulus modulus) {
    return GammaClass(descent_elem(D), modulus);
}

EtaleElem eval_at_W(const FunctionRep& h) {
    const auto& alg = h.curve.algebra;
    if (h.num[0].is_zero() || h.den[0].is_zero()) throw ZeroAtW();
    EtaleElem nu(alg, h.num[0]);
    EtaleElem de(alg, h.den[0]);
    try {
        (void)nu.inverse();  // h must be nonzero at W, not just pole-free
        return nu * de.inverse();
    } catch (const ZeroDivisor&) {
        throw ZeroAtW();
    }
}

bool verify_principal_identity(const FunctionRep& h, const GoodDivisor& div_h) {
    const auto& alg = h.curve.algebra;
    GammaElem lhs = descent_elem(div_h);
    EtaleElem hW = eval_at_W(h);
    FieldElem hm = eval_at_infinity(h);
    GammaElem rhs = chi(hW) * iota(alg, hm.inverse());
    return lhs == rhs;
}

}  // namespace cycdesc
