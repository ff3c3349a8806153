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

#ifndef CYCDESC_GAMMA_HPP
#define CYCDESC_GAMMA_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cycdesc/etale.hpp"

namespace cycdesc {

struct NotInGamma : MathError {
    NotInGamma(FieldElem nd, FieldElem np)
        : MathError("weighted norm " + nd.to_string() + " != n^p = " + np.to_string()),
          norm_delta(std::move(nd)),
          n_pow(std::move(np)) {}
    FieldElem norm_delta, n_pow;
};
struct UnsupportedBase : MathError {
    UnsupportedBase() : MathError("class search supports Q and finite prime fields only") {}
};
struct ModulusMismatch : MathError {
    ModulusMismatch() : MathError("class operands use different moduli or algebras") {}
};

/// A pair (delta, n) with weighted_norm(delta) = n^p.
class GammaElem {
  public:
    GammaElem(EtaleElem delta, FieldElem n);  // checked; throws NotInGamma
    const EtaleAlgebraPtr& algebra() const { return delta_.algebra(); }
    const EtaleElem& delta() const { return delta_; }
    const FieldElem& n() const { return n_; }

    GammaElem operator*(const GammaElem& o) const;
    GammaElem inverse() const;
    bool operator==(const GammaElem& o) const { return delta_ == o.delta_ && n_ == o.n_; }
    bool operator!=(const GammaElem& o) const { return !(*this == o); }
    std::string to_string() const;

  private:
    EtaleElem delta_;
    FieldElem n_;
};

GammaElem gamma_make(const EtaleElem& delta, const FieldElem& n);
/// theta -> (theta^p, N(theta))
GammaElem chi(const EtaleElem& theta);
/// x -> (x, x^{deg f / p})
GammaElem iota(const EtaleAlgebraPtr& alg, const FieldElem& x);

struct InChiIotaResult {
    enum class Kind { Yes, No, Inconclusive } kind;
    std::optional<EtaleElem> theta;  // Yes: g = chi(theta) * iota(c)
    std::optional<FieldElem> c;
};

/// Membership of g in chi(L*) iota(k*).  Over Q the scalar c ranges over the
/// subgroup of Q*/Q*^p generated by -1 and the primes of S; over a finite
/// prime field the search is exhaustive.  S must contain the support of g.
InChiIotaResult in_chi_iota_subgroup(const GammaElem& g, const std::vector<mpz_class>& S,
                                     int prime_budget = 20, std::uint64_t seed = 0);
/// Membership of g in chi(L*) alone (the c = 1 case of the same search).
InChiIotaResult in_chi_subgroup(const GammaElem& g, int prime_budget = 20,
                                std::uint64_t seed = 0);

enum class ClassModulus { ChiOnly, ChiIota };
enum class Verdict { Equal, Distinct, Inconclusive };

/// Primes dividing p, lc(f), disc(f0) and everything appearing in the
/// element; the minimal sound support for class searches over Q.
std::vector<mpz_class> gamma_support(const GammaElem& g);

class GammaClass {
  public:
    GammaClass(GammaElem rep, ClassModulus modulus,
               std::vector<mpz_class> extra_support = {});
    const GammaElem& rep() const { return rep_; }
    ClassModulus modulus() const { return modulus_; }
    const std::vector<mpz_class>& support() const { return support_; }

  private:
    GammaElem rep_;
    ClassModulus modulus_;
    std::vector<mpz_class> support_;
};

Verdict class_eq(const GammaClass& a, const GammaClass& b, int prime_budget = 20,
                 std::uint64_t seed = 0);

/// The image of a Gamma element in L*/L*^p k* (the "fake" group): the n
/// component is forgotten and scalar twists are quotiented out.
class FakeClass {
  public:
    FakeClass(EtaleElem delta, std::vector<mpz_class> support);
    const EtaleElem& delta() const { return delta_; }
    const std::vector<mpz_class>& support() const { return support_; }

  private:
    EtaleElem delta_;
    std::vector<mpz_class> support_;
};

FakeClass project_fake(const GammaElem& g);
Verdict fake_eq(const FakeClass& a, const FakeClass& b, int prime_budget = 20,
                std::uint64_t seed = 0);
Verdict fake_is_trivial(const FakeClass& a, int prime_budget = 20, std::uint64_t seed = 0);

}  // namespace cycdesc

#endif
