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

#include "cycdesc/poly.hpp"

#include <sstream>

namespace cycdesc {

Poly Poly::constant(const FieldElem& c) {
    Poly p(c.spec());
    if (!c.is_zero()) p.c_.push_back(c);
    return p;
}

Poly Poly::x(const FieldSpec& spec) {
    Poly p(spec);
    p.c_ = {FieldElem::zero(spec), FieldElem::one(spec)};
    return p;
}

Poly Poly::from_coeffs(const FieldSpec& spec, std::vector<FieldElem> coeffs) {
    Poly p(spec);
    p.c_ = std::move(coeffs);
    for (const auto& c : p.c_)
        if (c.spec() != spec) throw MathError("from_coeffs: mixed field specs");
    p.trim();
    return p;
}

Poly Poly::from_int_coeffs(const FieldSpec& spec, const std::vector<long>& coeffs) {
    std::vector<FieldElem> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.push_back(FieldElem::from_int(spec, v));
    return from_coeffs(spec, std::move(c));
}

FieldElem Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return FieldElem::zero(spec_);
    return c_[static_cast<size_t>(i)];
}

const FieldElem& Poly::lc() const {
    if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
    return c_.back();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    if (spec_ != o.spec_) throw MathError("poly +: mixed field specs");
    Poly r(spec_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), FieldElem::zero(spec_));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] = r.c_[i] + c_[i];
        if (i < o.c_.size()) r.c_[i] = r.c_[i] + o.c_[i];
    }
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(spec_);
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(-c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (spec_ != o.spec_) throw MathError("poly *: mixed field specs");
    if (is_zero() || o.is_zero()) return zero(spec_);
    Poly r(spec_);
    r.c_.assign(c_.size() + o.c_.size() - 1, FieldElem::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    r.trim();
    return r;
}

Poly Poly::scaled(const FieldElem& s) const {
    Poly r(spec_);
    if (s.is_zero()) return r;
    r.c_.reserve(c_.size());
    for (const auto& c : c_) r.c_.push_back(c * s);
    return r;
}

Poly Poly::shifted(int k) const {
    if (is_zero()) return *this;
    Poly r(spec_);
    r.c_.assign(static_cast<size_t>(k), FieldElem::zero(spec_));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (spec_ != divisor.spec_) throw MathError("divmod: mixed field specs");
    if (divisor.is_zero()) throw DivisionByZero();
    Poly q(spec_), r = *this;
    FieldElem lcinv = divisor.lc().inverse();
    int db = divisor.degree();
    if (r.degree() >= db) q.c_.assign(static_cast<size_t>(r.degree() - db + 1), FieldElem::zero(spec_));
    while (!r.is_zero() && r.degree() >= db) {
        FieldElem f = r.lc() * lcinv;
        int shift = r.degree() - db;
        q.c_[static_cast<size_t>(shift)] = f;
        for (int i = 0; i <= db; ++i) {
            size_t k = static_cast<size_t>(shift + i);
            r.c_[k] = r.c_[k] - f * divisor.coeff(i);
        }
        r.trim();
    }
    q.trim();
    return {q, r};
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem acc = FieldElem::zero(spec_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    Poly r(spec_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FieldElem::from_mpz(spec_, mpz_class(static_cast<long>(i))));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) throw MathError("monic of zero polynomial");
    return scaled(lc().inverse());
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " ";
        os << c_[i].to_string();
    }
    return os.str();
}

std::string Poly::to_pretty_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        FieldElem c = coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool unit = c.is_one();
        if (!unit || i == 0) os << c.to_string();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Poly Poly::parse(const FieldSpec& spec, const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    std::vector<FieldElem> coeffs;
    while (is >> tok) coeffs.push_back(FieldElem::parse(spec, tok));
    return from_coeffs(spec, std::move(coeffs));
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw MathError("gcd(0, 0) undefined");
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw MathError("xgcd(0, 0) undefined");
    const FieldSpec& spec = a.spec();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(FieldElem::one(spec)), s1 = Poly::zero(spec);
    Poly t0 = Poly::zero(spec), t1 = Poly::constant(FieldElem::one(spec));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Poly s2 = s0 - q * s1;
        Poly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    FieldElem norm = r0.lc().inverse();
    return {r0.scaled(norm), s0.scaled(norm), t0.scaled(norm)};
}

FieldElem resultant(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw MathError("resultant(0, 0) undefined");
    const FieldSpec& spec = a.spec();
    FieldElem one = FieldElem::one(spec);
    if (a.is_zero() || b.is_zero()) return FieldElem::zero(spec);
    Poly f = a, g = b;
    FieldElem res = one;
    bool negate = false;
    while (g.degree() > 0) {
        Poly r = f % g;
        int df = f.degree(), dg = g.degree(), dr = r.is_zero() ? -1 : r.degree();
        if ((df & 1) && (dg & 1)) negate = !negate;
        if (r.is_zero()) return FieldElem::zero(spec);
        res = res * g.lc().pow(df - dr);
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant: Res(f, const) = const^{deg f}.
    res = res * g.lc().pow(f.degree());
    return negate ? -res : res;
}

Poly pow_mod(const Poly& b, const mpz_class& e, const Poly& m) {
    if (e < 0) throw MathError("pow_mod: negative exponent");
    Poly base = b % m;
    Poly acc = Poly::constant(FieldElem::one(b.spec()));
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = (acc * base) % m;
        base = (base * base) % m;
        n >>= 1;
    }
    return acc;
}

Poly SquarefreeDecomposition::expand() const {
    Poly r = Poly::constant(content);
    for (const auto& [g, m] : parts)
        for (int i = 0; i < m; ++i) r = r * g;
    return r;
}

Poly SquarefreeDecomposition::radical() const {
    Poly r = Poly::constant(FieldElem::one(content.spec()));
    for (const auto& [g, m] : parts) r = r * g;
    return r;
}

SquarefreeDecomposition yun_squarefree(const Poly& f) {
    if (f.is_zero()) throw MathError("yun_squarefree of zero polynomial");
    mpz_class ch = f.spec().characteristic();
    if (ch != 0 && ch <= f.degree()) throw CharacteristicTooSmall();
    SquarefreeDecomposition out{f.lc(), {}};
    if (f.degree() == 0) return out;
    Poly w = f.monic();
    Poly d = w.derivative();
    Poly g = gcd(w, d);
    Poly c = w / g;          // product of distinct roots
    Poly y = d / g;
    Poly z = y - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        Poly gi = gcd(c, z);
        if (gi.degree() > 0) out.parts.emplace_back(gi, i);
        c = c / gi;
        y = z / gi;
        z = y - c.derivative();
        ++i;
    }
    return out;
}

}  // namespace cycdesc
