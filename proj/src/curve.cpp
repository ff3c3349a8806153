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

#include "cycdesc/curve.hpp"

#include <algorithm>

namespace cycdesc {

namespace {

Poly z_p_minus(const FieldSpec& spec, int p, const FieldElem& v) {
    std::vector<FieldElem> c(static_cast<size_t>(p) + 1, FieldElem::zero(spec));
    c[0] = -v;
    c.back() = FieldElem::one(spec);
    return Poly::from_coeffs(spec, std::move(c));
}

}  // namespace

CurveSpec curve_make(int p, const Poly& f, std::optional<FieldElem> c0) {
    CurveSpec cs;
    cs.algebra = etale_make(p, f, std::move(c0));
    cs.d = cs.algebra->d;
    cs.genus = (cs.d - 2) * (p - 1) / 2;
    return cs;
}

DivisorComponent DivisorComponent::horizontal(Poly a, Poly b) {
    const FieldSpec spec = a.spec();
    return DivisorComponent(Kind::Horizontal, std::move(a), std::move(b),
                            FieldElem::zero(spec), Poly(spec));
}

DivisorComponent DivisorComponent::fiber(FieldElem r, Poly m) {
    const FieldSpec spec = m.spec();
    return DivisorComponent(Kind::Fiber, Poly(spec), Poly(spec), std::move(r), std::move(m));
}

int DivisorComponent::degree() const {
    return kind_ == Kind::Horizontal ? a_.degree() : m_.degree();
}

std::string DivisorComponent::to_string() const {
    if (kind_ == Kind::Horizontal)
        return "H(" + a_.to_pretty_string() + " ; " + b_.to_pretty_string() + ")";
    return "F(" + r_.to_string() + " ; " + m_.to_pretty_string("z") + ")";
}

GoodDivisor::GoodDivisor(CurveSpec curve, std::vector<std::pair<DivisorComponent, int>> terms)
    : curve_(std::move(curve)), terms_(std::move(terms)) {}

int GoodDivisor::degree() const {
    int s = 0;
    for (const auto& [c, n] : terms_) s += n * c.degree();
    return s;
}

GoodDivisor GoodDivisor::operator+(const GoodDivisor& o) const {
    auto t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return GoodDivisor(curve_, std::move(t));
}

GoodDivisor GoodDivisor::operator-() const {
    auto t = terms_;
    for (auto& [c, n] : t) n = -n;
    return GoodDivisor(curve_, std::move(t));
}

GoodDivisor divisor_make(const CurveSpec& curve,
                         std::vector<std::pair<DivisorComponent, int>> terms) {
    const auto& alg = curve.algebra;
    const FieldSpec& spec = alg->base;
    for (const auto& [comp, mult] : terms) {
        (void)mult;
        if (comp.kind() == DivisorComponent::Kind::Horizontal) {
            const Poly& a = comp.a();
            const Poly& b = comp.b();
            if (a.degree() < 1 || a.lc() != FieldElem::one(spec))
                throw NotGood("horizontal component needs a monic nonconstant a");
            Poly da = a.derivative();
            if (da.is_zero() || gcd(a, da).degree() != 0)
                throw NotGood("a is not squarefree: " + a.to_pretty_string());
            if (b.degree() >= a.degree())
                throw NotOnCurve("deg b must be below deg a");
            Poly lhs = pow_mod(b, alg->p, a);
            Poly rhs = alg->f % a;
            if (lhs != rhs)
                throw NotOnCurve("b^p = " + lhs.to_pretty_string() +
                                 " differs from f = " + rhs.to_pretty_string() + " mod a");
            if (gcd(a, alg->f0m).degree() != 0)
                throw NotGood("a shares a root with f: " + a.to_pretty_string());
        } else {
            FieldElem v = alg->f.eval(comp.r());
            if (v == FieldElem::zero(spec))
                throw NotGood("fiber over a root of f");
            const Poly& m = comp.m();
            if (m.degree() < 1 || m.lc() != FieldElem::one(spec)) throw BadFiberFactor();
            if (!(z_p_minus(spec, alg->p, v) % m).is_zero()) throw BadFiberFactor();
        }
    }
    return GoodDivisor(curve, std::move(terms));
}

GoodDivisor fiber_divisor(const CurveSpec& curve, const FieldElem& r) {
    const auto& alg = curve.algebra;
    const FieldSpec& spec = alg->base;
    FieldElem v = alg->f.eval(r);
    if (v == FieldElem::zero(spec)) throw RamifiedFiber();
    Poly g = z_p_minus(spec, alg->p, v);
    std::vector<std::pair<DivisorComponent, int>> terms;
    if (spec.kind() == FieldKind::FinitePrime) {
        for (const auto& [h, m] : factor_mod_q(g, 0)) {
            (void)m;  // z^p - v is squarefree away from characteristic p
            terms.emplace_back(DivisorComponent::fiber(r, h), 1);
        }
    } else if (spec.kind() == FieldKind::Rationals) {
        for (const auto& [h, m] : factor_over_Q(g).parts) {
            (void)m;
            terms.emplace_back(DivisorComponent::fiber(r, h.monic()), 1);
        }
    } else {
        terms.emplace_back(DivisorComponent::fiber(r, g), 1);
    }
    return divisor_make(curve, std::move(terms));
}

FunctionRep function_make(const CurveSpec& curve, std::vector<Poly> num, std::vector<Poly> den) {
    size_t p = static_cast<size_t>(curve.algebra->p);
    const FieldSpec& spec = curve.algebra->base;
    num.resize(p, Poly(spec));
    den.resize(p, Poly(spec));
    bool num_zero = true, den_zero = true;
    for (const auto& u : num) num_zero = num_zero && u.is_zero();
    for (const auto& u : den) den_zero = den_zero && u.is_zero();
    if (num_zero || den_zero) throw NotInvertible();
    return FunctionRep{curve, std::move(num), std::move(den)};
}

FunctionRep function_from_x(const CurveSpec& curve, const Poly& num, const Poly& den) {
    return function_make(curve, {num}, {den});
}

FunctionRep function_y(const CurveSpec& curve) {
    const FieldSpec& spec = curve.algebra->base;
    return function_make(curve, {Poly(spec), Poly::constant(FieldElem::one(spec))},
                         {Poly::constant(FieldElem::one(spec))});
}

namespace {

/// Multiply two y-polynomials modulo y^p - f.
std::vector<Poly> y_mul(const CurveSpec& curve, const std::vector<Poly>& a,
                        const std::vector<Poly>& b) {
    size_t p = static_cast<size_t>(curve.algebra->p);
    const FieldSpec& spec = curve.algebra->base;
    std::vector<Poly> out(p, Poly(spec));
    for (size_t i = 0; i < p; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < p; ++j) {
            if (b[j].is_zero()) continue;
            Poly t = a[i] * b[j];
            size_t k = i + j;
            if (k >= p) {
                k -= p;
                t = t * curve.algebra->f;
            }
            out[k] = out[k] + t;
        }
    }
    return out;
}

}  // namespace

FunctionRep function_mul(const FunctionRep& a, const FunctionRep& b) {
    return function_make(a.curve, y_mul(a.curve, a.num, b.num), y_mul(a.curve, a.den, b.den));
}

FunctionRep function_inverse(const FunctionRep& h) {
    return FunctionRep{h.curve, h.den, h.num};
}

namespace {

/// Value of a y-polynomial over all points of one component, as a resultant.
FieldElem component_value(const CurveSpec& curve, const std::vector<Poly>& u,
                          const DivisorComponent& comp) {
    const FieldSpec& spec = curve.algebra->base;
    size_t p = static_cast<size_t>(curve.algebra->p);
    if (comp.kind() == DivisorComponent::Kind::Horizontal) {
        // Substitute y = b(x) and take the product over the roots of a.
        Poly acc(spec);
        Poly bp = Poly::constant(FieldElem::one(spec));
        for (size_t j = 0; j < p; ++j) {
            if (!u[j].is_zero()) acc = acc + (u[j] * bp) % comp.a();
            bp = (bp * comp.b()) % comp.a();
        }
        if (acc.is_zero()) return FieldElem::zero(spec);
        return resultant(comp.a(), acc % comp.a());
    }
    // Substitute x = r and take the product over the roots of m(z).
    std::vector<FieldElem> c;
    for (size_t j = 0; j < p; ++j) c.push_back(u[j].eval(comp.r()));
    Poly uz = Poly::from_coeffs(spec, std::move(c));
    if (uz.is_zero()) return FieldElem::zero(spec);
    return resultant(comp.m(), uz % comp.m());
}

}  // namespace

FieldElem eval_function_on_divisor(const FunctionRep& h, const GoodDivisor& D) {
    const FieldSpec& spec = h.curve.algebra->base;
    FieldElem out = FieldElem::one(spec);
    for (const auto& [comp, mult] : D.terms()) {
        FieldElem vn = component_value(h.curve, h.num, comp);
        FieldElem vd = component_value(h.curve, h.den, comp);
        if (vn == FieldElem::zero(spec) || vd == FieldElem::zero(spec)) throw SupportOverlap();
        FieldElem val = vn * vd.inverse();
        if (mult < 0) val = val.inverse();
        for (int i = 0; i < std::abs(mult); ++i) out = out * val;
    }
    return out;
}

namespace {

/// Weighted degree and leading form N(1, z) of a y-polynomial, where x has
/// weight 1 and y has weight (deg f)/p.  Returns weight -1 for the zero
/// polynomial.
std::pair<long, Poly> leading_form(const CurveSpec& curve, const std::vector<Poly>& u) {
    const FieldSpec& spec = curve.algebra->base;
    long w = curve.algebra->degf / curve.algebra->p;
    long W = -1;
    for (size_t j = 0; j < u.size(); ++j)
        if (!u[j].is_zero()) W = std::max(W, u[j].degree() + static_cast<long>(j) * w);
    Poly form(spec);
    if (W < 0) return {W, form};
    std::vector<FieldElem> c(u.size(), FieldElem::zero(spec));
    for (size_t j = 0; j < u.size(); ++j) {
        long i = W - static_cast<long>(j) * w;
        if (!u[j].is_zero() && i >= 0 && i <= u[j].degree())
            c[j] = u[j].coeff(static_cast<int>(i));
    }
    return {W, Poly::from_coeffs(spec, std::move(c))};
}

}  // namespace

FieldElem eval_at_infinity(const FunctionRep& h) {
    const auto& alg = h.curve.algebra;
    const FieldSpec& spec = alg->base;
    auto [wn, fn] = leading_form(h.curve, h.num);
    auto [wd, fd] = leading_form(h.curve, h.den);
    if (wn != wd || wn < 0) throw PoleAtInfinity();
    Poly modz = z_p_minus(spec, alg->p, alg->c);
    FieldElem vn = resultant(modz, fn);
    FieldElem vd = resultant(modz, fd);
    if (vn == FieldElem::zero(spec) || vd == FieldElem::zero(spec)) throw PoleAtInfinity();
    return vn * vd.inverse();
}

bool is_omm(const FunctionRep& h) {
    const auto& alg = h.curve.algebra;
    const FieldSpec& spec = alg->base;
    auto [wn, fn] = leading_form(h.curve, h.num);
    auto [wd, fd] = leading_form(h.curve, h.den);
    if (wn != wd || wn < 0) throw PoleAtInfinity();
    Poly modz = z_p_minus(spec, alg->p, alg->c);
    if (resultant(modz, fn) == FieldElem::zero(spec) ||
        resultant(modz, fd) == FieldElem::zero(spec))
        throw PoleAtInfinity();
    return ((fn - fd) % modz).is_zero();
}

}  // namespace cycdesc
