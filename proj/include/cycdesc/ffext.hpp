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

#ifndef CYCDESC_FFEXT_HPP
#define CYCDESC_FFEXT_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cycdesc/poly.hpp"

namespace cycdesc {

// Prime field arithmetic on machine words (q < 2^31).
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t q);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t q);

/// The field F_{q^e} presented as F_q[x]/g with g monic irreducible of degree
/// e.  Elements are coefficient vectors of length e (ascending).
class FqExt {
  public:
    using Elt = std::vector<std::uint64_t>;

    FqExt(std::uint64_t q, std::vector<std::uint64_t> modulus_monic);
    static FqExt prime_field(std::uint64_t q);
    /// Builds F_{q^e} by scanning for a monic irreducible of degree e
    /// (deterministic: lexicographic scan).
    static FqExt make(std::uint64_t q, int e);

    std::uint64_t q() const { return q_; }
    int ext_degree() const { return e_; }
    mpz_class order() const;  // q^e
    const std::vector<std::uint64_t>& modulus() const { return g_; }

    Elt zero() const { return Elt(static_cast<size_t>(e_), 0); }
    Elt one() const;
    Elt from_scalar(std::uint64_t a) const;
    Elt from_coeffs(const std::vector<std::uint64_t>& c) const;  // reduced mod g
    Elt gen() const;                                             // image of x

    bool is_zero(const Elt& a) const;
    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt pow(const Elt& a, const mpz_class& e) const;
    Elt inv(const Elt& a) const;

    /// Whether nonzero a is a p-th power (p prime, possibly = char).
    bool is_pth_power(const Elt& a, int p) const;
    /// A p-th root of a, when one exists.  Deterministic given rng state.
    std::optional<Elt> pth_root(const Elt& a, int p, std::mt19937_64& rng) const;

  private:
    std::uint64_t q_;
    int e_;
    std::vector<std::uint64_t> g_;  // monic, length e_+1
};

/// Coefficients of a FinitePrime Poly as machine words (ascending, trimmed).
std::vector<std::uint64_t> poly_to_words(const Poly& f);
Poly words_to_poly(const FieldSpec& spec, const std::vector<std::uint64_t>& w);

}  // namespace cycdesc

#endif
