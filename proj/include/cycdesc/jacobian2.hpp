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

#ifndef CYCDESC_JACOBIAN2_HPP
#define CYCDESC_JACOBIAN2_HPP

#include <random>

#include "cycdesc/descent.hpp"

namespace cycdesc {

struct NonGoodIntermediate : MathError {
    explicit NonGoodIntermediate(const std::string& m)
        : MathError("reduction hit a non-good intermediate divisor: " + m) {}
};

/// A divisor class on a hyperelliptic curve y^2 = f(x) with deg f even,
/// stored as a Mumford pair (a, b): the class of D_{a,b} - (deg a / 2) m,
/// where D_{a,b} is cut out by a(x) = 0, y = b(x), and m is the degree-2
/// divisor above infinity.  deg a is even, b is reduced mod a, b^2 = f mod a.
class MumfordClass {
  public:
    const CurveSpec& curve() const { return curve_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    bool is_identity() const { return a_.degree() == 0; }
    bool operator==(const MumfordClass& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const MumfordClass& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    friend MumfordClass mumford_make(const CurveSpec&, Poly, Poly);
    MumfordClass(CurveSpec c, Poly a, Poly b)
        : curve_(std::move(c)), a_(std::move(a)), b_(std::move(b)) {}
    CurveSpec curve_;
    Poly a_, b_;
};

/// Validates and normalizes: a monic with even degree coprime to f, b reduced
/// mod a with b^2 = f mod a.
MumfordClass mumford_make(const CurveSpec& curve, Poly a, Poly b);
MumfordClass mumford_identity(const CurveSpec& curve);
MumfordClass mumford_negate(const MumfordClass& A);

/// Composition followed by one balanced reduction step (division by y - b).
/// Deterministic; throws NonGoodIntermediate when the reduction would pass
/// through infinity or the ramification locus.
MumfordClass cantor_add(const MumfordClass& A, const MumfordClass& B);

/// The stored finite part D_{a,b} as a good divisor (repeated roots of a
/// become multiplicities on the squarefree parts).
GoodDivisor mumford_divisor(const MumfordClass& A);

GammaElem mumford_descent_elem(const MumfordClass& A);

/// Verifies descent_class(A) * descent_class(B) = descent_class(A + B) in the
/// class group modulo chi and iota.
Verdict homomorphism_check(const MumfordClass& A, const MumfordClass& B, int prime_budget = 20,
                           std::uint64_t seed = 0);

/// A uniform-ish good class: sample b of degree <= 3, factor f - b^2, and cut
/// an even-degree piece.  Throws MathError when the sample budget runs out.
MumfordClass random_good_class(const CurveSpec& curve, std::mt19937_64& rng);

}  // namespace cycdesc

#endif
