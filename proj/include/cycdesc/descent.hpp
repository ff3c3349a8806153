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

#ifndef CYCDESC_DESCENT_HPP
#define CYCDESC_DESCENT_HPP

#include "cycdesc/curve.hpp"
#include "cycdesc/gamma.hpp"

namespace cycdesc {

struct ZeroAtW : MathError {
    ZeroAtW() : MathError("function vanishes or has a pole at the ramification point W") {}
};

/// prod over the points (x_P, y_P) of D of (x_P - T)^{n_P} in L: a horizontal
/// component (a, b) contributes (-1)^{deg a} a(T), a fiber component (r, m)
/// contributes (r - T)^{deg m}.
EtaleElem eval_x_minus_T(const GoodDivisor& D);

/// c^{-(deg D)/p} times the product of the y-values of D: Res(a, b) per
/// horizontal component, (-1)^{deg m} m(0) per fiber component.
FieldElem eval_gamma_y(const GoodDivisor& D);

/// The pair (eval_x_minus_T(D), eval_gamma_y(D)); its membership in the group
/// of norm-compatible pairs is re-checked exactly, not assumed.
GammaElem descent_elem(const GoodDivisor& D);

/// descent_elem wrapped as a class with automatically computed prime support.
GammaClass descent_class(const GoodDivisor& D, ClassModulus modulus);

/// The value of h at the ramification point W = (T, 0): substitute y = 0 and
/// reduce the remaining x-polynomials in L.  Throws ZeroAtW when the result
/// is zero or not invertible.
EtaleElem eval_at_W(const FunctionRep& h);

/// Checks descent_elem(div h) = chi(h(W)) * iota(h(infinity)^{-1}) exactly,
/// for a function h with its principal divisor supplied by the caller.
bool verify_principal_identity(const FunctionRep& h, const GoodDivisor& div_h);

}  // namespace cycdesc

#endif
