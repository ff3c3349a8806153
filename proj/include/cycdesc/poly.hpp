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

#ifndef CYCDESC_POLY_HPP
#define CYCDESC_POLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cycdesc/field.hpp"

namespace cycdesc {

struct CharacteristicTooSmall : MathError {
    CharacteristicTooSmall() : MathError("square-free decomposition needs characteristic 0 or > deg f") {}
};
struct DegreeTooLarge : MathError {
    DegreeTooLarge() : MathError("degree exceeds the supported bound") {}
};

/// Dense univariate polynomial over a FieldSpec field.  Coefficients ascend;
/// the highest-index coefficient is nonzero unless the polynomial is zero.
class Poly {
  public:
    explicit Poly(FieldSpec spec) : spec_(std::move(spec)) {}
    static Poly zero(const FieldSpec& spec) { return Poly(spec); }
    static Poly constant(const FieldElem& c);
    static Poly x(const FieldSpec& spec);
    static Poly from_coeffs(const FieldSpec& spec, std::vector<FieldElem> coeffs);
    static Poly from_int_coeffs(const FieldSpec& spec, const std::vector<long>& coeffs);

    const FieldSpec& spec() const { return spec_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    FieldElem coeff(int i) const;
    const FieldElem& lc() const;
    const std::vector<FieldElem>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly scaled(const FieldElem& s) const;
    Poly shifted(int k) const;  // multiply by x^k
    bool operator==(const Poly& o) const { return spec_ == o.spec_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    FieldElem eval(const FieldElem& x) const;
    Poly derivative() const;
    Poly monic() const;

    std::string to_string() const;                                   // "c0 c1 c2 ..."
    std::string to_pretty_string(const std::string& var = "x") const;
    static Poly parse(const FieldSpec& spec, const std::string& text);

  private:
    void trim();
    FieldSpec spec_;
    std::vector<FieldElem> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd
struct XgcdResult {
    Poly g, u, v;  // g = gcd monic, u*a + v*b = g
};
XgcdResult xgcd(const Poly& a, const Poly& b);

/// Res(a, b) = lc(a)^{deg b} * prod b over the roots of a.
FieldElem resultant(const Poly& a, const Poly& b);

/// b^e mod m.
Poly pow_mod(const Poly& b, const mpz_class& e, const Poly& m);

struct SquarefreeDecomposition {
    FieldElem content;                      // constant c with c * prod parts^mult = input
    std::vector<std::pair<Poly, int>> parts;  // monic squarefree, strictly increasing mult
    Poly expand() const;
    Poly radical() const;  // prod of the parts, monic
};

SquarefreeDecomposition yun_squarefree(const Poly& f);

/// Squarefree decomposition valid in any characteristic (Yun in
/// characteristic 0 or > deg f, the Frobenius-aware variant otherwise).
SquarefreeDecomposition squarefree_decompose(const Poly& f);

/// Irreducible factorization over F_q (Cantor-Zassenhaus), deterministic given seed.
/// lc(f) * prod factors^mult = f, factors monic irreducible.
std::vector<std::pair<Poly, int>> factor_mod_q(const Poly& f, std::uint64_t seed);

struct RationalFactorization {
    mpq_class content;                        // content * prod factors^mult = input
    std::vector<std::pair<Poly, int>> parts;  // irreducible primitive integer polynomials over Q
    Poly expand(const FieldSpec& spec) const;
};

/// Irreducible factorization over Q (factor mod a good prime, Hensel lift,
/// subset recombination).  deg f <= 24.
RationalFactorization factor_over_Q(const Poly& f);

}  // namespace cycdesc

#endif
