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

#ifndef CYCDESC_FIELD_HPP
#define CYCDESC_FIELD_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cycdesc {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : MathError {
    DivisionByZero() : MathError("division by zero") {}
};
struct NoPthRoot : MathError {
    explicit NoPthRoot(const std::string& msg) : MathError(msg) {}
};
struct ParseError : MathError {
    explicit ParseError(const std::string& msg) : MathError(msg) {}
};

enum class FieldKind { Rationals, FinitePrime, Cyclotomic };

/// Description of a base field: Q, F_q (q prime), or Q(zeta_p) for p in {3,5,7}.
class FieldSpec {
  public:
    static FieldSpec rationals();
    static FieldSpec finite_prime(const mpz_class& q);
    static FieldSpec cyclotomic(int p);

    FieldKind kind() const { return kind_; }
    const mpz_class& modulus() const { return q_; }  // FinitePrime only
    int cyclotomic_order() const { return p_; }      // Cyclotomic only

    mpz_class characteristic() const;
    bool operator==(const FieldSpec& other) const;
    bool operator!=(const FieldSpec& other) const { return !(*this == other); }
    std::string describe() const;

  private:
    FieldSpec(FieldKind k, mpz_class q, int p) : kind_(k), q_(std::move(q)), p_(p) {}
    FieldKind kind_;
    mpz_class q_;  // prime modulus when FinitePrime
    int p_ = 0;    // cyclotomic order when Cyclotomic
};

/// An exact element of a FieldSpec field, always in canonical reduced form:
/// lowest-terms fraction, residue in [0,q), or coefficient vector of length
/// p-1 reduced modulo the p-th cyclotomic polynomial.
class FieldElem {
  public:
    FieldElem() : spec_(FieldSpec::rationals()), rat_(0) {}
    static FieldElem zero(const FieldSpec& spec);
    static FieldElem one(const FieldSpec& spec);
    static FieldElem from_int(const FieldSpec& spec, long v);
    static FieldElem from_mpz(const FieldSpec& spec, const mpz_class& v);
    static FieldElem from_mpq(const FieldSpec& spec, const mpq_class& v);
    // Cyclotomic element from coefficients of 1, zeta, ..., zeta^{p-2} (short
    // vectors padded with zeros; longer vectors reduced mod Phi_p).
    static FieldElem from_cyclotomic_coeffs(const FieldSpec& spec,
                                            std::vector<mpq_class> coeffs);

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem inverse() const;
    FieldElem pow(const mpz_class& e) const;  // negative exponents invert

    // Accessors for the active payload.
    const mpq_class& rational() const { return rat_; }
    const mpz_class& residue() const { return res_; }
    const std::vector<mpq_class>& cyclotomic_coeffs() const { return cyc_; }

    std::string to_string() const;
    static FieldElem parse(const FieldSpec& spec, const std::string& text);

  private:
    explicit FieldElem(FieldSpec spec) : spec_(std::move(spec)), rat_(0) {}
    void canonicalize();
    FieldSpec spec_;
    mpq_class rat_;                // Rationals
    mpz_class res_;                // FinitePrime
    std::vector<mpq_class> cyc_;   // Cyclotomic, length p-1
};

/// A canonical primitive p-th root of unity in the given field, or throws
/// NoPthRoot when mu_p is not contained in it.  For F_q the smallest positive
/// residue of multiplicative order exactly p is returned.
FieldElem primitive_pth_root(const FieldSpec& spec, int p);

/// Whether mu_p is contained in the field.
bool has_pth_roots_of_unity(const FieldSpec& spec, int p);

/// Rational reconstruction: finds a/b with |a|, b <= floor(sqrt(m/2)),
/// gcd(b, m) = 1 and a = r*b (mod m), or nullopt if none exists.
std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m);

bool is_prime(const mpz_class& n);

}  // namespace cycdesc

#endif
