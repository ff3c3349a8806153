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

#ifndef CYCDESC_FFORACLE_HPP
#define CYCDESC_FFORACLE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cycdesc/descent.hpp"

namespace cycdesc {

struct BadResidue : MathError {
    BadResidue() : MathError("the finite-field oracle needs q = 1 (mod p)") {}
};
struct PrecisionExceeded : MathError {
    explicit PrecisionExceeded(const std::string& m)
        : MathError("picard model precision exceeded: " + m) {}
};
struct NoRepresentative : MathError {
    NoRepresentative() : MathError("no good representative found within the search bound") {}
};
struct TooLarge : MathError {
    explicit TooLarge(const std::string& m) : MathError("enumeration bound exceeded: " + m) {}
};

/// A closed point of degree <= 2 on the smooth model of y^p = f(x) over F_q:
/// either a horizontal point (minimal polynomial a of x, y = b(x) on it; the
/// ramified points have b = 0), a fiber point (rational x = r with y of
/// degree 2, minimal polynomial m), or a point above infinity (the value of
/// y / x^{deg f / p} is the root zeta of z^p - lc f).
struct ClosedPoint {
    enum class Kind { Horizontal, Fiber, Infinite };
    Kind kind;
    Poly a;
    Poly b;
    FieldElem r;
    Poly m;
    int degree = 1;
    bool ramified = false;

    static ClosedPoint horizontal(Poly a, Poly b, bool ramified);
    static ClosedPoint fiber(FieldElem r, Poly m);
    static ClosedPoint infinite(const FieldSpec& spec, FieldElem zeta);
    /// A degree-2 point above infinity: m is an irreducible quadratic factor
    /// of z^p - lc f cutting out the conjugate pair of values of y / x^{deg f / p}.
    static ClosedPoint infinite2(Poly m);
    bool is_affine() const { return kind != Kind::Infinite; }
    std::string to_string() const;

  private:
    ClosedPoint(Kind k, Poly aa, Poly bb, FieldElem rr, Poly mm)
        : kind(k), a(std::move(aa)), b(std::move(bb)), r(std::move(rr)), m(std::move(mm)) {}
};

/// All closed points of degree <= B, including the ramified and the infinite
/// ones.  Requires q = 1 (mod p), q <= 13 and B <= 2.
std::vector<ClosedPoint> enumerate_points(const CurveSpec& curve, int B);

/// #C(F_{q^e}) on the smooth projective model, e in {1, 2}.
mpz_class curve_point_count(const CurveSpec& curve, int e);

/// #J(F_q) from the zeta function (genus <= 2), via the point counts over
/// F_q and F_{q^2}.
mpz_class jacobian_order_from_zeta(const CurveSpec& curve);

struct PicardInternals;

/// Finite presentations of Pic^0 and Pic_m^0 of a cyclic cover over F_q,
/// built from divisors of located functions on closed points of degree <= 2.
struct PicardModel {
    CurveSpec curve;
    std::vector<ClosedPoint> points;
    mpz_class jacobian_order = 0;            // from the zeta function
    mpz_class pic0_order = 0;                // always equal to jacobian_order
    mpz_class picm_order = 0;
    std::vector<mpz_class> pic0_invariants;  // diagonal form of the Pic^0 torsion
    std::vector<mpz_class> picm_invariants;
    bool quotient_surjective = false;        // Pic_m^0 ->> Pic^0 in the model
    std::vector<std::string> skipped;        // functions the zero locator refused
    std::shared_ptr<PicardInternals> internals;
};

/// Builds the model.  Envelope: q <= 13, genus <= 2, f monic squarefree with
/// p | deg f and a fully split fiber above infinity.  Throws
/// PrecisionExceeded when the located relations cannot cut the groups down
/// to the independently known orders.
PicardModel build_picard(const CurveSpec& curve, int B = 2);

/// |ker(multiplication by n)| on the Pic^0 model.
mpz_class pic0_torsion_order(const PicardModel& model, int n);

struct CoinvariantOrders {
    mpz_class h1M;         // |M / (sigma - 1) M|
    mpz_class h1Mmu;       // |(M / mu_p) / (sigma - 1)|
    mpz_class imageOrder;  // order of the image of the first group in the second
    mpz_class sizeM;       // |M|, always p^{d-1}
    mpz_class sizeMmu;     // |M / mu_p|, always p^{d-2}
    bool norm_surjective = false;  // a preimage of a primitive root was found
};

/// Frobenius-coinvariant orders of the mu_p-valued root modules of f over
/// F_q, computed by explicit enumeration of the Frobenius orbit structure.
CoinvariantOrders coinvariant_orders(const CurveSpec& curve);

struct GammaCounts {
    mpz_class gOrder;   // |Gamma / chi(L*)|
    mpz_class giOrder;  // |Gamma / chi(L*) iota(k*)|
};

/// Exact orders of the finite class groups over F_q, from the cyclic
/// structure of the factor fields of L.  Envelope: q <= 13, deg f <= 8.
GammaCounts gamma_class_count(const CurveSpec& curve);

/// One line of a machine-parsable verification report.
struct CheckLine {
    std::string name, instance, status, detail;  // status: PASS | FAIL | SKIP
    std::string to_string() const;
};
struct OracleReport {
    std::vector<CheckLine> lines;
    bool all_pass() const;
    int count(const std::string& name, const std::string& status) const;
};

/// A p-torsion class of the Pic_m^0 model together with a good
/// representative D and the value (x-T)(D) / h(W), where div h = pD and h is
/// 1 at every point above infinity.
struct TorsionAlpha {
    GoodDivisor rep;
    EtaleElem value;
    std::vector<mpz_class> coords;  // class coordinates in the model
};

/// All nonzero p-torsion classes of Pic_m^0 for which a good representative
/// and an omm function could be extracted from the model.
std::vector<TorsionAlpha> alpha_on_p_torsion(const PicardModel& model);

/// Samples `samples` classes from the p-divisible part of Pic_m^0 and checks
/// theta^p = (x-T)(D), N(theta) = (gamma y)(D) and chi(theta) =
/// descent_elem(D) elementwise, where theta = (x-T)(D') / h(W) for a
/// p-division D' of D; then runs the alpha membership / homomorphism checks.
OracleReport verify_thm42_ff(const PicardModel& model, int samples, std::uint64_t seed);

}  // namespace cycdesc

#endif
