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

#ifndef CYCDESC_CURVE_HPP
#define CYCDESC_CURVE_HPP

#include <string>
#include <utility>
#include <vector>

#include "cycdesc/etale.hpp"

namespace cycdesc {

struct NotOnCurve : MathError {
    explicit NotOnCurve(const std::string& m) : MathError("component not on the curve: " + m) {}
};
struct NotGood : MathError {
    explicit NotGood(const std::string& m) : MathError("divisor support is not good: " + m) {}
};
struct BadFiberFactor : MathError {
    BadFiberFactor() : MathError("fiber factor does not divide z^p - f(r)") {}
};
struct RamifiedFiber : MathError {
    RamifiedFiber() : MathError("fiber over a root of f is ramified") {}
};
struct SupportOverlap : MathError {
    SupportOverlap() : MathError("function has a zero or pole on the divisor support") {}
};
struct PoleAtInfinity : MathError {
    PoleAtInfinity() : MathError("function has a zero or pole above infinity") {}
};

/// The cyclic cover y^p = f(x) of the projective line.
struct CurveSpec {
    EtaleAlgebraPtr algebra;  // carries p, f, c = lc(f), f0, weights
    int d = 0;                // number of distinct roots of f
    int genus = 0;            // (d-2)(p-1)/2
};

CurveSpec curve_make(int p, const Poly& f, std::optional<FieldElem> c0 = std::nullopt);

/// One closed piece of a good divisor: either a Mumford-style horizontal
/// component (a(x) monic squarefree coprime to f0, y = b(x) on it) or a
/// bundle of points in the fiber over x = r cut out by a monic divisor m(z)
/// of z^p - f(r).
class DivisorComponent {
  public:
    enum class Kind { Horizontal, Fiber };

    static DivisorComponent horizontal(Poly a, Poly b);
    static DivisorComponent fiber(FieldElem r, Poly m);

    Kind kind() const { return kind_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const FieldElem& r() const { return r_; }
    const Poly& m() const { return m_; }
    int degree() const;
    std::string to_string() const;

  private:
    DivisorComponent(Kind k, Poly a, Poly b, FieldElem r, Poly m)
        : kind_(k), a_(std::move(a)), b_(std::move(b)), r_(std::move(r)), m_(std::move(m)) {}
    Kind kind_;
    Poly a_, b_;   // horizontal data
    FieldElem r_;  // fiber data
    Poly m_;
};

/// A formal sum of validated components with integer multiplicities, with
/// support away from the ramification locus and from infinity.
class GoodDivisor {
  public:
    GoodDivisor(CurveSpec curve, std::vector<std::pair<DivisorComponent, int>> terms);
    const CurveSpec& curve() const { return curve_; }
    const std::vector<std::pair<DivisorComponent, int>>& terms() const { return terms_; }
    int degree() const;
    GoodDivisor operator+(const GoodDivisor& o) const;
    GoodDivisor operator-() const;
    GoodDivisor operator-(const GoodDivisor& o) const { return *this + (-o); }

  private:
    CurveSpec curve_;
    std::vector<std::pair<DivisorComponent, int>> terms_;
};

GoodDivisor divisor_make(const CurveSpec& curve,
                         std::vector<std::pair<DivisorComponent, int>> terms);

/// The full pullback of the point x = r: the degree-p divisor cut out by
/// z^p - f(r), split into irreducible fiber factors when factorization over
/// the base field is available.
GoodDivisor fiber_divisor(const CurveSpec& curve, const FieldElem& r);

/// A function on the curve written as a quotient of two y-polynomials
/// sum_{j<p} u_j(x) y^j with coefficients in k[x].
struct FunctionRep {
    CurveSpec curve;
    std::vector<Poly> num, den;  // each of size p
};

FunctionRep function_make(const CurveSpec& curve, std::vector<Poly> num, std::vector<Poly> den);
/// h(x) in k(x), as a function on the curve.
FunctionRep function_from_x(const CurveSpec& curve, const Poly& num, const Poly& den);
/// The coordinate function y.
FunctionRep function_y(const CurveSpec& curve);
FunctionRep function_mul(const FunctionRep& a, const FunctionRep& b);
FunctionRep function_inverse(const FunctionRep& h);

/// prod over the points P of D of h(P)^{n_P}, exactly, via resultants.
FieldElem eval_function_on_divisor(const FunctionRep& h, const GoodDivisor& D);

/// prod over the p points above infinity of h(P), computed from the weighted
/// leading forms of numerator and denominator (weight 1 for x, (deg f)/p for
/// y) as Res_z(z^p - c, num-form) / Res_z(z^p - c, den-form).
FieldElem eval_at_infinity(const FunctionRep& h);

/// True iff h takes the value 1 at every point above infinity.
bool is_omm(const FunctionRep& h);

}  // namespace cycdesc

#endif
