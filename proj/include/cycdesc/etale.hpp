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

#ifndef CYCDESC_ETALE_HPP
#define CYCDESC_ETALE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cycdesc/poly.hpp"

namespace cycdesc {

struct NotPPowerFree : MathError {
    NotPPowerFree() : MathError("a root multiplicity of f reaches the exponent p") {}
};
struct DegreeNotDivisible : MathError {
    DegreeNotDivisible() : MathError("p does not divide deg f") {}
};
struct BadCharacteristic : MathError {
    BadCharacteristic() : MathError("base characteristic equals the exponent p") {}
};
struct NotInvertible : MathError {
    NotInvertible() : MathError("element is not invertible where required") {}
};
struct FactorizationUnavailable : MathError {
    explicit FactorizationUnavailable(const std::string& m) : MathError(m) {}
};
/// Inversion failure; the offending common factor of (rep, f0) is attached.
struct ZeroDivisor : MathError {
    explicit ZeroDivisor(Poly cert)
        : MathError("zero divisor; gcd certificate: " + cert.to_pretty_string()),
          certificate(std::move(cert)) {}
    Poly certificate;
};

class EtaleAlgebra;
using EtaleAlgebraPtr = std::shared_ptr<const EtaleAlgebra>;

/// The algebra L = k[T]/f0 attached to a defining polynomial f of a cyclic
/// cover y^p = f(x): f0 is c0 times the monic radical of f, and the Yun
/// multiplicities carry the weights used by the weighted norm.
class EtaleAlgebra {
  public:
    FieldSpec base;
    int p = 0;
    Poly f;        // the defining polynomial
    FieldElem c;   // lc(f)
    FieldElem c0;  // radical scaling, default 1
    Poly f0;       // c0 * monic radical of f
    Poly f0m;      // monic radical (reduction modulus)
    SquarefreeDecomposition sqfree;
    int degf = 0;
    int d = 0;  // deg f0m

    EtaleAlgebra(FieldSpec b, Poly ff) : base(std::move(b)), f(std::move(ff)), c(), c0(), f0(base), f0m(base) {}
};

EtaleAlgebraPtr etale_make(int p, const Poly& f, std::optional<FieldElem> c0 = std::nullopt);

class EtaleElem {
  public:
    EtaleElem(EtaleAlgebraPtr alg, const Poly& rep);
    static EtaleElem zero(const EtaleAlgebraPtr& alg);
    static EtaleElem one(const EtaleAlgebraPtr& alg);
    static EtaleElem T(const EtaleAlgebraPtr& alg);
    static EtaleElem scalar(const EtaleAlgebraPtr& alg, const FieldElem& a);

    const EtaleAlgebraPtr& algebra() const { return alg_; }
    const Poly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    EtaleElem operator+(const EtaleElem& o) const;
    EtaleElem operator-(const EtaleElem& o) const;
    EtaleElem operator*(const EtaleElem& o) const;
    EtaleElem operator-() const;
    bool operator==(const EtaleElem& o) const;
    bool operator!=(const EtaleElem& o) const { return !(*this == o); }

    EtaleElem inverse() const;  // throws ZeroDivisor with certificate
    EtaleElem pow(const mpz_class& e) const;

    std::string to_string() const { return rep_.to_string(); }

  private:
    EtaleAlgebraPtr alg_;
    Poly rep_;
};

/// N(beta) = prod over Yun parts g_m of Res(g_m, rep)^m; equals the product
/// of beta over the roots of f weighted by their multiplicities.
FieldElem weighted_norm(const EtaleElem& beta);

/// Plain algebra norm and trace of beta in k[T]/f0m.
std::pair<FieldElem, FieldElem> norm_and_trace(const EtaleElem& beta);

struct PthPowerResult {
    enum class Kind { Root, NonResidue, Inconclusive } kind;
    std::optional<EtaleElem> root;  // Root: verified root^p = delta
    mpz_class witness = 0;          // NonResidue: witness prime
};

/// Decides membership of delta in L*^p.  Root answers carry a verified root;
/// NonResidue answers carry a good prime at which delta is not a p-th power
/// in the reduced algebra.  Inconclusive only after prime_budget good primes
/// all pass the residue screen but no root could be reconstructed.
PthPowerResult pth_power_test(const EtaleElem& delta, int prime_budget = 20,
                              std::uint64_t seed = 0);

/// All eta in L with eta^p = 1.  Requires mu_p contained in the base field;
/// built from the irreducible factorization of f0 and CRT idempotents.
std::vector<EtaleElem> mu_p_list(const EtaleAlgebraPtr& alg);

/// Irreducible monic factors of f0m over the base field (the factorization
/// mu_p_list is built from; cyclotomic bases are supported when f0 has
/// rational coefficients).
std::vector<Poly> etale_field_factors(const EtaleAlgebraPtr& alg);

}  // namespace cycdesc

#endif
