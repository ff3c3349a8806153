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

#include "cycdesc/ffext.hpp"

#include <algorithm>

namespace cycdesc {

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    std::uint64_t s = a + b;
    return s >= q ? s - q : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return a >= b ? a - b : a + q - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mod_mul(r, a, q);
        a = mod_mul(a, a, q);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t q) {
    if (a % q == 0) throw DivisionByZero();
    return mod_pow(a % q, q - 2, q);  // q prime
}

FqExt::FqExt(std::uint64_t q, std::vector<std::uint64_t> modulus_monic)
    : q_(q), g_(std::move(modulus_monic)) {
    e_ = static_cast<int>(g_.size()) - 1;
    if (e_ < 1 || g_.back() != 1) throw MathError("FqExt: modulus must be monic of degree >= 1");
    for (auto& c : g_) c %= q_;
    g_.back() = 1;
}

FqExt FqExt::prime_field(std::uint64_t q) { return FqExt(q, {0, 1}); }

namespace {
// Irreducibility over F_q via x^{q^e} = x and gcd conditions, on word vectors.
std::vector<std::uint64_t> wmulmod(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b,
                                   const std::vector<std::uint64_t>& g, std::uint64_t q) {
    size_t e = g.size() - 1;
    std::vector<std::uint64_t> r(2 * e, 0);
    for (size_t i = 0; i < e; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < e; ++j) r[i + j] = mod_add(r[i + j], mod_mul(a[i], b[j], q), q);
    }
    for (size_t i = 2 * e; i-- > e;) {
        std::uint64_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (size_t j = 0; j < e; ++j) r[i - e + j] = mod_sub(r[i - e + j], mod_mul(c, g[j], q), q);
    }
    r.resize(e);
    return r;
}

bool is_irreducible_words(const std::vector<std::uint64_t>& g, std::uint64_t q) {
    FieldSpec Fq = FieldSpec::finite_prime(static_cast<unsigned long>(q));
    Poly p = words_to_poly(Fq, g);
    auto fac = factor_mod_q(p, 0);
    return fac.size() == 1 && fac[0].second == 1;
}
}  // namespace

FqExt FqExt::make(std::uint64_t q, int e) {
    if (e == 1) return prime_field(q);
    std::vector<std::uint64_t> g(static_cast<size_t>(e) + 1, 0);
    g.back() = 1;
    // Scan constant-plus-linear parts lexicographically.
    for (std::uint64_t lin = 0; lin < q; ++lin) {
        for (std::uint64_t c0 = 1; c0 < q; ++c0) {
            g[0] = c0;
            g[1] = (e > 1) ? lin : g[1];
            if (is_irreducible_words(g, q)) return FqExt(q, g);
        }
    }
    // Very small q may need a richer shape; add a quadratic term.
    for (std::uint64_t quad = 0; quad < q; ++quad) {
        for (std::uint64_t lin = 0; lin < q; ++lin) {
            for (std::uint64_t c0 = 1; c0 < q; ++c0) {
                g[0] = c0;
                g[1] = lin;
                if (e > 2) g[2] = quad;
                if (is_irreducible_words(g, q)) return FqExt(q, g);
            }
        }
    }
    throw MathError("FqExt::make: no irreducible found");
}

mpz_class FqExt::order() const {
    mpz_class o;
    mpz_ui_pow_ui(o.get_mpz_t(), static_cast<unsigned long>(q_), static_cast<unsigned long>(e_));
    return o;
}

FqExt::Elt FqExt::one() const {
    Elt r = zero();
    r[0] = 1 % q_;
    return r;
}

FqExt::Elt FqExt::from_scalar(std::uint64_t a) const {
    Elt r = zero();
    r[0] = a % q_;
    return r;
}

FqExt::Elt FqExt::from_coeffs(const std::vector<std::uint64_t>& c) const {
    std::vector<std::uint64_t> r = c;
    for (auto& x : r) x %= q_;
    while (r.size() > static_cast<size_t>(e_)) {
        std::uint64_t top = r.back();
        r.pop_back();
        if (!top) continue;
        size_t base = r.size() - static_cast<size_t>(e_);
        for (size_t j = 0; j < static_cast<size_t>(e_); ++j)
            r[base + j] = mod_sub(r[base + j], mod_mul(top, g_[j], q_), q_);
    }
    r.resize(static_cast<size_t>(e_), 0);
    return r;
}

FqExt::Elt FqExt::gen() const {
    if (e_ == 1) return from_coeffs({0, 1});
    Elt r = zero();
    r[1] = 1;
    return r;
}

bool FqExt::is_zero(const Elt& a) const {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

FqExt::Elt FqExt::add(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_add(r[i], b[i], q_);
    return r;
}

FqExt::Elt FqExt::sub(const Elt& a, const Elt& b) const {
    Elt r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_sub(r[i], b[i], q_);
    return r;
}

FqExt::Elt FqExt::neg(const Elt& a) const { return sub(zero(), a); }

FqExt::Elt FqExt::mul(const Elt& a, const Elt& b) const { return wmulmod(a, b, g_, q_); }

FqExt::Elt FqExt::pow(const Elt& a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), -e);
    Elt r = one(), base = a;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

FqExt::Elt FqExt::inv(const Elt& a) const {
    if (is_zero(a)) throw DivisionByZero();
    return pow(a, order() - 2);
}

bool FqExt::is_pth_power(const Elt& a, int p) const {
    if (is_zero(a)) return true;
    mpz_class n = order() - 1;
    if (n % p != 0) return true;  // p-th power map is a bijection
    Elt t = pow(a, n / p);
    return t == one();
}

std::optional<FqExt::Elt> FqExt::pth_root(const Elt& a, int p, std::mt19937_64& rng) const {
    if (is_zero(a)) return zero();
    mpz_class n = order() - 1;
    if (q_ == static_cast<std::uint64_t>(p)) {
        // Frobenius is bijective in characteristic p: x = a^{p^{e-1}}.
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(e_ > 0 ? e_ - 1 : 0));
        Elt x = pow(a, e);
        if (pow(x, p) == a) return x;
        return std::nullopt;
    }
    if (n % p != 0) {
        mpz_class pinv;
        mpz_class pz = p;
        if (!mpz_invert(pinv.get_mpz_t(), pz.get_mpz_t(), n.get_mpz_t())) return std::nullopt;
        Elt x = pow(a, pinv);
        if (pow(x, p) == a) return x;
        return std::nullopt;
    }
    // n = p^s * t with p coprime to t; split a across the two subgroups.
    int s = 0;
    mpz_class t = n;
    while (t % p == 0) {
        t /= p;
        ++s;
    }
    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(s));
    mpz_class u;  // ps * u = 1 mod t
    if (t == 1)
        u = 0;
    else
        mpz_invert(u.get_mpz_t(), ps.get_mpz_t(), t.get_mpz_t());
    Elt a_t = pow(a, ps * u);          // component of order dividing t
    Elt a_s = mul(a, inv(a_t));        // component in the Sylow p-subgroup
    // Root of the t-part.
    Elt y_t = one();
    if (t > 1) {
        mpz_class pinv, pz = p;
        mpz_invert(pinv.get_mpz_t(), pz.get_mpz_t(), t.get_mpz_t());
        y_t = pow(a_t, pinv);
    }
    // Generator of the Sylow p-subgroup.
    Elt b = one();
    for (int tries = 0; tries < 256; ++tries) {
        Elt r = zero();
        for (auto& c : r) c = rng() % q_;
        if (is_zero(r)) continue;
        Elt cand = pow(r, t);
        if (pow(cand, ps / p) != one()) {
            b = cand;
            break;
        }
        if (tries == 255) return std::nullopt;
    }
    // Base-p digits of log_b(a_s) via small discrete logs in mu_p.
    Elt gamma = pow(b, ps / p);  // order p
    mpz_class k = 0, pi = 1;
    Elt rcur = a_s;
    for (int i = 0; i < s; ++i) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(s - 1 - i));
        Elt w = pow(rcur, e);
        int d = -1;
        Elt acc = one();
        for (int j = 0; j < p; ++j) {
            if (acc == w) {
                d = j;
                break;
            }
            acc = mul(acc, gamma);
        }
        if (d < 0) return std::nullopt;
        k += pi * d;
        rcur = mul(rcur, pow(b, n - ((pi * d) % n) % n));
        pi *= p;
    }
    if (k % p != 0) return std::nullopt;  // a_s not a p-th power
    Elt y_s = pow(b, k / p);
    Elt x = mul(y_t, y_s);
    if (pow(x, p) == a) return x;
    return std::nullopt;
}

std::vector<std::uint64_t> poly_to_words(const Poly& f) {
    std::vector<std::uint64_t> w;
    for (int i = 0; i <= f.degree(); ++i) w.push_back(f.coeff(i).residue().get_ui());
    return w;
}

Poly words_to_poly(const FieldSpec& spec, const std::vector<std::uint64_t>& w) {
    std::vector<FieldElem> c;
    for (auto x : w) c.push_back(FieldElem::from_mpz(spec, mpz_class(static_cast<unsigned long>(x))));
    return Poly::from_coeffs(spec, std::move(c));
}

}  // namespace cycdesc
