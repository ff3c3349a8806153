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

#include "cycdesc/field.hpp"

#include <algorithm>
#include <sstream>

namespace cycdesc {

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::Rationals, 0, 0); }

FieldSpec FieldSpec::finite_prime(const mpz_class& q) {
    if (!is_prime(q)) throw MathError("finite_prime: modulus " + q.get_str() + " is not prime");
    return FieldSpec(FieldKind::FinitePrime, q, 0);
}

FieldSpec FieldSpec::cyclotomic(int p) {
    if (p != 3 && p != 5 && p != 7)
        throw MathError("cyclotomic: only p in {3,5,7} supported");
    return FieldSpec(FieldKind::Cyclotomic, 0, p);
}

mpz_class FieldSpec::characteristic() const {
    return kind_ == FieldKind::FinitePrime ? q_ : mpz_class(0);
}

bool FieldSpec::operator==(const FieldSpec& other) const {
    return kind_ == other.kind_ && q_ == other.q_ && p_ == other.p_;
}

std::string FieldSpec::describe() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::FinitePrime: return "F" + q_.get_str();
        case FieldKind::Cyclotomic: return "Q(zeta" + std::to_string(p_) + ")";
    }
    return "?";
}

namespace {

void check_same_spec(const FieldSpec& a, const FieldSpec& b) {
    if (a != b) throw MathError("field elements from different fields: " + a.describe() + " vs " + b.describe());
}

// Reduces a zeta-polynomial (arbitrary length) modulo Phi_p = 1 + x + ... + x^{p-1},
// using zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}) and zeta^p = 1.
std::vector<mpq_class> reduce_cyclotomic(std::vector<mpq_class> c, int p) {
    // First fold exponents mod p (zeta^p = 1).
    std::vector<mpq_class> folded(static_cast<size_t>(p), 0);
    for (size_t i = 0; i < c.size(); ++i) folded[i % static_cast<size_t>(p)] += c[i];
    // Then eliminate the zeta^{p-1} coefficient.
    std::vector<mpq_class> out(static_cast<size_t>(p - 1), 0);
    for (int i = 0; i < p - 1; ++i) out[static_cast<size_t>(i)] = folded[static_cast<size_t>(i)] - folded[static_cast<size_t>(p - 1)];
    for (auto& x : out) x.canonicalize();
    return out;
}

}  // namespace

FieldElem FieldElem::zero(const FieldSpec& spec) { return from_int(spec, 0); }
FieldElem FieldElem::one(const FieldSpec& spec) { return from_int(spec, 1); }

FieldElem FieldElem::from_int(const FieldSpec& spec, long v) {
    return from_mpz(spec, mpz_class(v));
}

FieldElem FieldElem::from_mpz(const FieldSpec& spec, const mpz_class& v) {
    FieldElem e(spec);
    switch (spec.kind()) {
        case FieldKind::Rationals: e.rat_ = v; break;
        case FieldKind::FinitePrime: {
            mpz_class r;
            mpz_mod(r.get_mpz_t(), v.get_mpz_t(), spec.modulus().get_mpz_t());
            e.res_ = r;
            break;
        }
        case FieldKind::Cyclotomic:
            e.cyc_.assign(static_cast<size_t>(spec.cyclotomic_order() - 1), 0);
            e.cyc_[0] = v;
            break;
    }
    return e;
}

FieldElem FieldElem::from_mpq(const FieldSpec& spec, const mpq_class& v) {
    FieldElem e(spec);
    switch (spec.kind()) {
        case FieldKind::Rationals:
            e.rat_ = v;
            e.rat_.canonicalize();
            break;
        case FieldKind::FinitePrime: {
            mpz_class den = v.get_den(), num = v.get_num(), dinv;
            if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), spec.modulus().get_mpz_t()) == 0)
                throw DivisionByZero();
            mpz_class r = num * dinv;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), spec.modulus().get_mpz_t());
            e.res_ = r;
            break;
        }
        case FieldKind::Cyclotomic:
            e.cyc_.assign(static_cast<size_t>(spec.cyclotomic_order() - 1), 0);
            e.cyc_[0] = v;
            e.cyc_[0].canonicalize();
            break;
    }
    return e;
}

FieldElem FieldElem::from_cyclotomic_coeffs(const FieldSpec& spec, std::vector<mpq_class> coeffs) {
    if (spec.kind() != FieldKind::Cyclotomic) throw MathError("from_cyclotomic_coeffs: wrong field kind");
    FieldElem e(spec);
    e.cyc_ = reduce_cyclotomic(std::move(coeffs), spec.cyclotomic_order());
    return e;
}

bool FieldElem::is_zero() const {
    switch (spec_.kind()) {
        case FieldKind::Rationals: return rat_ == 0;
        case FieldKind::FinitePrime: return res_ == 0;
        case FieldKind::Cyclotomic:
            return std::all_of(cyc_.begin(), cyc_.end(), [](const mpq_class& x) { return x == 0; });
    }
    return false;
}

bool FieldElem::is_one() const { return *this == one(spec_); }

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_spec(spec_, o.spec_);
    FieldElem e(spec_);
    switch (spec_.kind()) {
        case FieldKind::Rationals: e.rat_ = rat_ + o.rat_; break;
        case FieldKind::FinitePrime: {
            e.res_ = res_ + o.res_;
            if (e.res_ >= spec_.modulus()) e.res_ -= spec_.modulus();
            break;
        }
        case FieldKind::Cyclotomic:
            e.cyc_.resize(cyc_.size());
            for (size_t i = 0; i < cyc_.size(); ++i) e.cyc_[i] = cyc_[i] + o.cyc_[i];
            break;
    }
    return e;
}

FieldElem FieldElem::operator-(const FieldElem& o) const { return *this + (-o); }

FieldElem FieldElem::operator-() const {
    FieldElem e(spec_);
    switch (spec_.kind()) {
        case FieldKind::Rationals: e.rat_ = -rat_; break;
        case FieldKind::FinitePrime:
            e.res_ = res_ == 0 ? mpz_class(0) : mpz_class(spec_.modulus() - res_);
            break;
        case FieldKind::Cyclotomic:
            e.cyc_.resize(cyc_.size());
            for (size_t i = 0; i < cyc_.size(); ++i) e.cyc_[i] = -cyc_[i];
            break;
    }
    return e;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_spec(spec_, o.spec_);
    FieldElem e(spec_);
    switch (spec_.kind()) {
        case FieldKind::Rationals:
            e.rat_ = rat_ * o.rat_;
            e.rat_.canonicalize();
            break;
        case FieldKind::FinitePrime: {
            mpz_class r = res_ * o.res_;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), spec_.modulus().get_mpz_t());
            e.res_ = r;
            break;
        }
        case FieldKind::Cyclotomic: {
            std::vector<mpq_class> prod(cyc_.size() * 2, 0);
            for (size_t i = 0; i < cyc_.size(); ++i)
                for (size_t j = 0; j < o.cyc_.size(); ++j) prod[i + j] += cyc_[i] * o.cyc_[j];
            e.cyc_ = reduce_cyclotomic(std::move(prod), spec_.cyclotomic_order());
            break;
        }
    }
    return e;
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZero();
    FieldElem e(spec_);
    switch (spec_.kind()) {
        case FieldKind::Rationals:
            e.rat_ = 1 / rat_;
            e.rat_.canonicalize();
            break;
        case FieldKind::FinitePrime: {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), res_.get_mpz_t(), spec_.modulus().get_mpz_t());
            e.res_ = inv;
            break;
        }
        case FieldKind::Cyclotomic: {
            // Extended Euclid against Phi_p over Q, inlined on coefficient vectors.
            int p = spec_.cyclotomic_order();
            std::vector<mpq_class> r0(static_cast<size_t>(p), 1);  // Phi_p
            std::vector<mpq_class> r1(cyc_.begin(), cyc_.end());
            while (!r1.empty() && r1.back() == 0) r1.pop_back();
            std::vector<mpq_class> s0{};  // coefficient of this against Phi_p: start 0
            std::vector<mpq_class> s1{1};
            auto deg = [](const std::vector<mpq_class>& v) { return static_cast<int>(v.size()) - 1; };
            auto trim = [](std::vector<mpq_class>& v) {
                while (!v.empty() && v.back() == 0) v.pop_back();
            };
            while (!r1.empty()) {
                // r0 = q*r1 + r, with bookkeeping s0 - q*s1.
                std::vector<mpq_class> q(static_cast<size_t>(std::max(0, deg(r0) - deg(r1)) + 1), 0);
                std::vector<mpq_class> rem = r0;
                while (static_cast<int>(rem.size()) - 1 >= deg(r1) && !rem.empty()) {
                    mpq_class c = rem.back() / r1.back();
                    c.canonicalize();
                    size_t shift = rem.size() - r1.size();
                    q[shift] += c;
                    for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
                    trim(rem);
                    if (rem.size() <= r1.size() - 1) break;
                }
                std::vector<mpq_class> snew = s0;
                snew.resize(std::max(snew.size(), q.size() + s1.size()), 0);
                for (size_t i = 0; i < q.size(); ++i)
                    for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
                trim(snew);
                r0 = std::move(r1);
                r1 = std::move(rem);
                s0 = std::move(s1);
                s1 = std::move(snew);
            }
            // r0 is the gcd (a nonzero constant since Phi_p is irreducible), s0 the cofactor.
            if (r0.size() != 1) throw DivisionByZero();
            mpq_class g = r0[0];
            std::vector<mpq_class> inv(s0.size());
            for (size_t i = 0; i < s0.size(); ++i) {
                inv[i] = s0[i] / g;
                inv[i].canonicalize();
            }
            e.cyc_ = reduce_cyclotomic(std::move(inv), p);
            break;
        }
    }
    return e;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem base = *this, acc = one(spec_);
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

bool FieldElem::operator==(const FieldElem& o) const {
    if (spec_ != o.spec_) return false;
    switch (spec_.kind()) {
        case FieldKind::Rationals: return rat_ == o.rat_;
        case FieldKind::FinitePrime: return res_ == o.res_;
        case FieldKind::Cyclotomic: return cyc_ == o.cyc_;
    }
    return false;
}

void FieldElem::canonicalize() {}

std::string FieldElem::to_string() const {
    switch (spec_.kind()) {
        case FieldKind::Rationals: {
            std::ostringstream os;
            os << rat_;
            return os.str();
        }
        case FieldKind::FinitePrime: return res_.get_str();
        case FieldKind::Cyclotomic: {
            std::ostringstream os;
            for (size_t i = 0; i < cyc_.size(); ++i) {
                if (i) os << ",";
                os << cyc_[i];
            }
            return os.str();
        }
    }
    return "?";
}

FieldElem FieldElem::parse(const FieldSpec& spec, const std::string& text) {
    auto parse_q = [](const std::string& s) {
        mpq_class v;
        if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
            throw ParseError("bad field literal: '" + s + "'");
        v.canonicalize();
        if (v.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
        return v;
    };
    switch (spec.kind()) {
        case FieldKind::Rationals: return from_mpq(spec, parse_q(text));
        case FieldKind::FinitePrime: return from_mpq(spec, parse_q(text));
        case FieldKind::Cyclotomic: {
            std::vector<mpq_class> coeffs;
            std::string chunk;
            std::istringstream is(text);
            while (std::getline(is, chunk, ',')) coeffs.push_back(parse_q(chunk));
            if (coeffs.empty()) throw ParseError("empty cyclotomic literal");
            return from_cyclotomic_coeffs(spec, std::move(coeffs));
        }
    }
    throw ParseError("unknown field kind");
}

bool has_pth_roots_of_unity(const FieldSpec& spec, int p) {
    if (p == 2) return spec.kind() != FieldKind::FinitePrime || spec.modulus() != 2;
    switch (spec.kind()) {
        case FieldKind::Rationals: return false;
        case FieldKind::Cyclotomic: return spec.cyclotomic_order() == p;
        case FieldKind::FinitePrime: {
            mpz_class r = spec.modulus() - 1;
            return mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
        }
    }
    return false;
}

FieldElem primitive_pth_root(const FieldSpec& spec, int p) {
    if (!has_pth_roots_of_unity(spec, p))
        throw NoPthRoot("no primitive " + std::to_string(p) + "-th root of unity in " + spec.describe());
    switch (spec.kind()) {
        case FieldKind::Rationals:
            return FieldElem::from_int(spec, -1);  // p == 2 here
        case FieldKind::Cyclotomic: {
            if (p == 2) return FieldElem::from_int(spec, -1);
            std::vector<mpq_class> c(static_cast<size_t>(spec.cyclotomic_order() - 1), 0);
            c[1] = 1;
            return FieldElem::from_cyclotomic_coeffs(spec, std::move(c));
        }
        case FieldKind::FinitePrime: {
            // Smallest positive residue of order exactly p.
            for (mpz_class a = 2; a < spec.modulus(); ++a) {
                FieldElem x = FieldElem::from_mpz(spec, a);
                if (x.pow(p).is_one() && !x.is_one()) return x;
            }
            throw NoPthRoot("no element of order " + std::to_string(p) + " in " + spec.describe());
        }
    }
    throw NoPthRoot("unreachable");
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& r, const mpz_class& m) {
    if (r < 0 || r >= m) throw MathError("rational_reconstruct: residue out of range");
    mpz_class bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    // Half-extended Euclid on (m, r); stop when remainder drops below the bound.
    mpz_class r0 = m, r1 = r, t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    mpz_class a = r1, b = t1;
    if (b < 0) { a = -a; b = -b; }
    if (b == 0 || b > bound) return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
    if (g != 1) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) return std::nullopt;
    // Verify a = r*b (mod m).
    mpz_class chk = a - r * b;
    if (!mpz_divisible_p(chk.get_mpz_t(), m.get_mpz_t())) return std::nullopt;
    mpq_class out(a, b);
    out.canonicalize();
    return out;
}

}  // namespace cycdesc
