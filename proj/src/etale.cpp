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

#include "cycdesc/etale.hpp"

#include <algorithm>

#include "cycdesc/ffext.hpp"

namespace cycdesc {

EtaleAlgebraPtr etale_make(int p, const Poly& f, std::optional<FieldElem> c0) {
    if (f.is_zero()) throw MathError("etale_make: f = 0");
    const FieldSpec& base = f.spec();
    if (base.characteristic() == p) throw BadCharacteristic();
    if (f.degree() % p != 0) throw DegreeNotDivisible();
    auto alg = std::make_shared<EtaleAlgebra>(base, f);
    alg->p = p;
    alg->degf = f.degree();
    alg->c = f.lc();
    alg->c0 = c0 ? *c0 : FieldElem::one(base);
    if (alg->c0.is_zero()) throw MathError("etale_make: c0 = 0");
    alg->sqfree = squarefree_decompose(f);
    for (auto& [g, m] : alg->sqfree.parts)
        if (m >= p) throw NotPPowerFree();
    alg->f0m = alg->sqfree.radical();
    alg->f0 = alg->f0m.scaled(alg->c0);
    alg->d = alg->f0m.degree();
    return alg;
}

EtaleElem::EtaleElem(EtaleAlgebraPtr alg, const Poly& rep) : alg_(std::move(alg)), rep_(rep % alg_->f0m) {}

EtaleElem EtaleElem::zero(const EtaleAlgebraPtr& alg) { return EtaleElem(alg, Poly::zero(alg->base)); }
EtaleElem EtaleElem::one(const EtaleAlgebraPtr& alg) {
    return EtaleElem(alg, Poly::constant(FieldElem::one(alg->base)));
}
EtaleElem EtaleElem::T(const EtaleAlgebraPtr& alg) { return EtaleElem(alg, Poly::x(alg->base)); }
EtaleElem EtaleElem::scalar(const EtaleAlgebraPtr& alg, const FieldElem& a) {
    return EtaleElem(alg, Poly::constant(a));
}

static void check_same(const EtaleElem& a, const EtaleElem& b) {
    if (a.algebra()->f0m != b.algebra()->f0m || a.algebra()->p != b.algebra()->p)
        throw MathError("etale elements live in different algebras");
}

EtaleElem EtaleElem::operator+(const EtaleElem& o) const {
    check_same(*this, o);
    return EtaleElem(alg_, rep_ + o.rep_);
}
EtaleElem EtaleElem::operator-(const EtaleElem& o) const {
    check_same(*this, o);
    return EtaleElem(alg_, rep_ - o.rep_);
}
EtaleElem EtaleElem::operator*(const EtaleElem& o) const {
    check_same(*this, o);
    return EtaleElem(alg_, (rep_ * o.rep_) % alg_->f0m);
}
EtaleElem EtaleElem::operator-() const { return EtaleElem(alg_, -rep_); }
bool EtaleElem::operator==(const EtaleElem& o) const {
    check_same(*this, o);
    return rep_ == o.rep_;
}

EtaleElem EtaleElem::inverse() const {
    auto r = xgcd(rep_, alg_->f0m);
    if (r.g.degree() != 0) throw ZeroDivisor(r.g);
    if (r.g.is_zero()) throw DivisionByZero();
    return EtaleElem(alg_, r.u.scaled(r.g.coeff(0).inverse()) % alg_->f0m);
}

EtaleElem EtaleElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    EtaleElem r = one(alg_);
    EtaleElem base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

FieldElem weighted_norm(const EtaleElem& beta) {
    const auto& alg = beta.algebra();
    FieldElem out = FieldElem::one(alg->base);
    if (beta.rep().is_zero()) throw NotInvertible();
    for (const auto& [g, m] : alg->sqfree.parts) {
        FieldElem r = resultant(g, beta.rep());
        if (r.is_zero()) throw NotInvertible();
        for (int i = 0; i < m; ++i) out = out * r;
    }
    return out;
}

std::pair<FieldElem, FieldElem> norm_and_trace(const EtaleElem& beta) {
    const auto& alg = beta.algebra();
    FieldElem norm = beta.rep().is_zero() ? FieldElem::zero(alg->base)
                                          : resultant(alg->f0m, beta.rep());
    // Trace of the multiplication-by-beta matrix in the basis 1, T, ..., T^{d-1}.
    FieldElem tr = FieldElem::zero(alg->base);
    Poly col = beta.rep();
    for (int j = 0; j < alg->d; ++j) {
        if (j > 0) col = (col.shifted(1)) % alg->f0m;
        if (col.degree() >= j) tr = tr + col.coeff(j);
    }
    return {norm, tr};
}

// ---------------------------------------------------------------------------
// Factorization of f0 over the base field
// ---------------------------------------------------------------------------

namespace {

// Gauss sum: sqrt of (-1)^{(p-1)/2} p inside Q(zeta_p).
FieldElem gauss_sum(const FieldSpec& spec, int p) {
    FieldElem zeta = primitive_pth_root(spec, p);
    FieldElem s = FieldElem::zero(spec);
    for (int t = 1; t < p; ++t) {
        long ls = mod_pow(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>((p - 1) / 2),
                          static_cast<std::uint64_t>(p)) == 1
                      ? 1
                      : -1;
        s = s + zeta.pow(t) * FieldElem::from_int(spec, ls);
    }
    return s;
}

std::vector<Poly> factor_f0_cyclotomic(const EtaleAlgebraPtr& alg) {
    const FieldSpec& spec = alg->base;
    int p = spec.cyclotomic_order();
    // Only rational-coefficient f0 supported: factor over Q, then split the
    // rational-irreducible parts that break over the quadratic subfield.
    const FieldSpec Q = FieldSpec::rationals();
    std::vector<FieldElem> qc;
    for (int i = 0; i <= alg->f0m.degree(); ++i) {
        const auto cy = alg->f0m.coeff(i).cyclotomic_coeffs();
        for (size_t t = 1; t < cy.size(); ++t)
            if (cy[t] != 0)
                throw FactorizationUnavailable("cyclotomic factorization needs rational f0");
        qc.push_back(FieldElem::from_mpq(Q, cy[0]));
    }
    Poly f0q = Poly::from_coeffs(Q, std::move(qc));
    auto fac = factor_over_Q(f0q);
    // pstar = (-1)^{(p-1)/2} p; the quadratic subfield of Q(zeta_p) is Q(sqrt(pstar)).
    long pstar = ((p - 1) / 2) % 2 ? -p : p;
    FieldElem sq = gauss_sum(spec, p);
    std::vector<Poly> out;
    for (const auto& [g, m] : fac.parts) {
        (void)m;  // f0 squarefree
        std::vector<FieldElem> lifted;
        for (int i = 0; i <= g.degree(); ++i)
            lifted.push_back(FieldElem::from_mpq(spec, g.coeff(i).rational()));
        Poly gl = Poly::from_coeffs(spec, std::move(lifted)).monic();
        if (g.degree() == 1) {
            out.push_back(gl);
            continue;
        }
        if (g.degree() == 2) {
            mpq_class a = g.lc().rational(), b = g.coeff(1).rational(), cc = g.coeff(0).rational();
            mpq_class disc = b * b - 4 * a * cc;
            // disc = pstar * s^2 with s rational?
            mpq_class ratio = disc / pstar;
            ratio.canonicalize();
            mpz_class num = ratio.get_num(), den = ratio.get_den();
            if (ratio > 0 && mpz_perfect_square_p(num.get_mpz_t()) &&
                mpz_perfect_square_p(den.get_mpz_t())) {
                mpz_class sn, sd;
                mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
                mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
                FieldElem s = FieldElem::from_mpq(spec, mpq_class(sn, sd));
                FieldElem root_disc = sq * s;  // sqrt(disc) in Q(zeta_p)
                FieldElem inv2a = (FieldElem::from_mpq(spec, 2 * a)).inverse();
                FieldElem mb = FieldElem::from_mpq(spec, -b);
                FieldElem r1 = (mb + root_disc) * inv2a;
                FieldElem r2 = (mb - root_disc) * inv2a;
                out.push_back(Poly::from_coeffs(spec, {-r1, FieldElem::one(spec)}));
                out.push_back(Poly::from_coeffs(spec, {-r2, FieldElem::one(spec)}));
                continue;
            }
            out.push_back(gl);
            continue;
        }
        // Degree >= 3: odd degree cannot contain the quadratic subfield, and
        // for p = 3 that subfield is the only proper one.
        if (p == 3 && g.degree() % 2 == 1) {
            out.push_back(gl);
            continue;
        }
        throw FactorizationUnavailable("cannot certify irreducibility over this cyclotomic field");
    }
    return out;
}

}  // namespace

std::vector<Poly> etale_field_factors(const EtaleAlgebraPtr& alg) {
    const FieldSpec& spec = alg->base;
    std::vector<Poly> out;
    switch (spec.kind()) {
        case FieldKind::Rationals: {
            auto fac = factor_over_Q(alg->f0m);
            for (const auto& [g, m] : fac.parts) out.push_back(g.monic());
            break;
        }
        case FieldKind::FinitePrime: {
            for (const auto& [g, m] : factor_mod_q(alg->f0m, 0)) out.push_back(g);
            break;
        }
        case FieldKind::Cyclotomic:
            out = factor_f0_cyclotomic(alg);
            break;
    }
    return out;
}

std::vector<EtaleElem> mu_p_list(const EtaleAlgebraPtr& alg) {
    const FieldSpec& spec = alg->base;
    int p = alg->p;
    if (!has_pth_roots_of_unity(spec, p))
        throw FactorizationUnavailable("mu_p is not contained in the base field");
    FieldElem zeta = primitive_pth_root(spec, p);
    std::vector<Poly> factors = etale_field_factors(alg);
    size_t J = factors.size();
    // CRT idempotents e_j.
    std::vector<Poly> idem;
    for (size_t j = 0; j < J; ++j) {
        Poly M = Poly::constant(FieldElem::one(spec));
        for (size_t i = 0; i < J; ++i)
            if (i != j) M = M * factors[i];
        auto r = xgcd(M % factors[j], factors[j]);
        if (r.g.degree() != 0) throw MathError("mu_p_list: factors not coprime");
        Poly u = r.u.scaled(r.g.coeff(0).inverse());
        idem.push_back((M * u) % alg->f0m);
    }
    // All scalar-root combinations across the factors.
    std::vector<EtaleElem> out;
    std::vector<int> t(J, 0);
    for (;;) {
        Poly rep = Poly::zero(spec);
        for (size_t j = 0; j < J; ++j) rep = rep + idem[j].scaled(zeta.pow(t[j]));
        out.push_back(EtaleElem(alg, rep % alg->f0m));
        size_t j = 0;
        while (j < J && ++t[j] == p) t[j++] = 0;
        if (j == J) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// p-th power testing
// ---------------------------------------------------------------------------

namespace {

using MV = std::vector<mpz_class>;  // element of (Z/M)[T]/f0, ascending, length d

void mv_reduce(MV& a, const MV& f0, const mpz_class& M) {
    size_t d = f0.size() - 1;  // f0 monic length d+1
    for (size_t i = a.size(); i-- > d;) {
        mpz_class c = a[i] % M;
        a[i] = 0;
        if (c == 0) continue;
        for (size_t j = 0; j < d; ++j) {
            a[i - d + j] -= c * f0[j];
            mpz_mod(a[i - d + j].get_mpz_t(), a[i - d + j].get_mpz_t(), M.get_mpz_t());
        }
    }
    a.resize(d);
    for (auto& c : a) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), M.get_mpz_t());
}

MV mv_mul(const MV& a, const MV& b, const MV& f0, const mpz_class& M) {
    MV r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
            mpz_mod(r[i + j].get_mpz_t(), r[i + j].get_mpz_t(), M.get_mpz_t());
        }
    }
    mv_reduce(r, f0, M);
    return r;
}

MV mv_sub(MV a, const MV& b, const mpz_class& M) {
    for (size_t i = 0; i < a.size(); ++i) {
        a[i] -= b[i];
        mpz_mod(a[i].get_mpz_t(), a[i].get_mpz_t(), M.get_mpz_t());
    }
    return a;
}

MV mv_pow(const MV& a, int e, const MV& f0, const mpz_class& M) {
    MV r(f0.size() - 1, 0);
    r[0] = 1;
    MV base = a;
    int k = e;
    while (k > 0) {
        if (k & 1) r = mv_mul(r, base, f0, M);
        base = mv_mul(base, base, f0, M);
        k >>= 1;
    }
    return r;
}

// Value of a base-field element at an embedding (zeta -> z) modulo M.
mpz_class embed_coeff(const FieldElem& a, const mpz_class& z, const mpz_class& M) {
    auto embed_q = [&](const mpq_class& v) {
        mpz_class den_inv;
        if (!mpz_invert(den_inv.get_mpz_t(), v.get_den().get_mpz_t(), M.get_mpz_t()))
            throw MathError("denominator not invertible at this prime");
        mpz_class r = v.get_num() * den_inv;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), M.get_mpz_t());
        return r;
    };
    switch (a.spec().kind()) {
        case FieldKind::Rationals:
            return embed_q(a.rational());
        case FieldKind::Cyclotomic: {
            mpz_class acc = 0, zp = 1;
            for (const auto& cy : a.cyclotomic_coeffs()) {
                acc += embed_q(cy) * zp;
                mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), M.get_mpz_t());
                zp = (zp * z) % M;
            }
            return acc;
        }
        case FieldKind::FinitePrime:
            return a.residue() % M;
    }
    return 0;
}

MV embed_poly(const Poly& f, int pad_to, const mpz_class& z, const mpz_class& M) {
    MV r(static_cast<size_t>(std::max(pad_to, f.degree() + 1)), 0);
    for (int i = 0; i <= f.degree(); ++i) r[static_cast<size_t>(i)] = embed_coeff(f.coeff(i), z, M);
    return r;
}

Poly mv_to_poly(const MV& a, const FieldSpec& spec) {
    std::vector<FieldElem> c;
    for (const auto& v : a) c.push_back(FieldElem::from_mpz(spec, v));
    return Poly::from_coeffs(spec, std::move(c));
}

struct Embedding {
    explicit Embedding(const FieldSpec& Fq) : f0q(Fq), repq(Fq) {}
    mpz_class z;       // root of Phi_p mod q (0 for a rational base)
    Poly f0q;          // f0 at this embedding over F_q
    Poly repq;         // delta at this embedding over F_q
    std::vector<Poly> factors;           // monic irreducible factors of f0q
    std::vector<FqExt::Elt> local_delta; // delta in each factor field
    std::vector<FqExt> fields;
};

// Roots of Phi_p mod q for q = 1 mod p (all p-1 of them), or {0} over Q.
std::vector<mpz_class> cyclotomic_roots_mod_q(int p, const mpz_class& q) {
    std::uint64_t qq = q.get_ui();
    std::vector<mpz_class> roots;
    // Element of order p: g^{(q-1)/p} for successive g.
    for (std::uint64_t g = 2; g < qq; ++g) {
        std::uint64_t w = mod_pow(g, (qq - 1) / static_cast<std::uint64_t>(p), qq);
        if (w != 1) {
            std::uint64_t acc = w;
            for (int t = 1; t < p; ++t) {
                roots.push_back(mpz_class(static_cast<unsigned long>(acc)));
                acc = mod_mul(acc, w, qq);
            }
            break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Small linear solve mod M (matrix invertible mod the underlying prime).
std::vector<mpz_class> solve_mod(std::vector<std::vector<mpz_class>> A,
                                 std::vector<mpz_class> v, const mpz_class& M) {
    size_t n = v.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        mpz_class inv;
        bool found = false;
        for (size_t r = col; r < n; ++r) {
            if (mpz_invert(inv.get_mpz_t(), A[r][col].get_mpz_t(), M.get_mpz_t())) {
                piv = r;
                found = true;
                break;
            }
        }
        if (!found) throw MathError("singular system in root reconstruction");
        std::swap(A[piv], A[col]);
        std::swap(v[piv], v[col]);
        for (size_t j = col; j < n; ++j) A[col][j] = (A[col][j] * inv) % M;
        v[col] = (v[col] * inv) % M;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            mpz_class f = A[r][col];
            for (size_t j = col; j < n; ++j) {
                A[r][j] -= f * A[col][j];
                mpz_mod(A[r][j].get_mpz_t(), A[r][j].get_mpz_t(), M.get_mpz_t());
            }
            v[r] -= f * v[col];
            mpz_mod(v[r].get_mpz_t(), v[r].get_mpz_t(), M.get_mpz_t());
        }
    }
    return v;
}

// pth_power_test over a finite prime base field: fully conclusive.
PthPowerResult pth_power_test_ff(const EtaleElem& delta, std::uint64_t seed) {
    const auto& alg = delta.algebra();
    int p = alg->p;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto factors = factor_mod_q(alg->f0m, seed);
    const FieldSpec& spec = alg->base;
    std::vector<Poly> roots;
    for (const auto& [g, m] : factors) {
        (void)m;
        FqExt F(spec.modulus().get_ui(), poly_to_words(g));
        Poly dg = delta.rep() % g;
        std::vector<std::uint64_t> w = poly_to_words(dg);
        w.resize(static_cast<size_t>(g.degree()), 0);
        if (!F.is_pth_power(w, p)) return {PthPowerResult::Kind::NonResidue, std::nullopt, spec.modulus()};
        auto r = F.pth_root(w, p, rng);
        if (!r) return {PthPowerResult::Kind::NonResidue, std::nullopt, spec.modulus()};
        roots.push_back(words_to_poly(spec, *r));
    }
    // CRT the local roots back into k[T]/f0.
    Poly theta = Poly::zero(spec);
    for (size_t j = 0; j < roots.size(); ++j) {
        Poly M = Poly::constant(FieldElem::one(spec));
        for (size_t i = 0; i < roots.size(); ++i)
            if (i != j) M = M * factors[i].first;
        auto bez = xgcd(M % factors[j].first, factors[j].first);
        Poly u = bez.u.scaled(bez.g.coeff(0).inverse());
        theta = (theta + roots[j] * M * u) % alg->f0m;
    }
    EtaleElem th(alg, theta);
    if (th.pow(p) != delta) return {PthPowerResult::Kind::Inconclusive, std::nullopt, 0};
    return {PthPowerResult::Kind::Root, th, 0};
}

}  // namespace

PthPowerResult pth_power_test(const EtaleElem& delta, int prime_budget, std::uint64_t seed) {
    const auto& alg = delta.algebra();
    const FieldSpec& spec = alg->base;
    int p = alg->p;
    if (gcd(delta.rep(), alg->f0m).degree() != 0 || delta.rep().is_zero()) throw NotInvertible();
    if (delta == EtaleElem::one(alg)) return {PthPowerResult::Kind::Root, EtaleElem::one(alg), 0};
    if (spec.kind() == FieldKind::FinitePrime) return pth_power_test_ff(delta, seed);

    std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    mpz_class bound("2");
    {
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), 10, 80);
        bound *= t;  // reconstructible numerators/denominators up to 10^40
    }

    std::vector<mpz_class> good_primes;
    mpz_class q = p;
    while (static_cast<int>(good_primes.size()) < prime_budget) {
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        if ((q - 1) % p != 0) continue;
        std::vector<mpz_class> zs = spec.kind() == FieldKind::Cyclotomic
                                        ? cyclotomic_roots_mod_q(p, q)
                                        : std::vector<mpz_class>{0};
        if (spec.kind() == FieldKind::Cyclotomic && static_cast<int>(zs.size()) != p - 1) continue;
        FieldSpec Fq = FieldSpec::finite_prime(q);
        bool ok = true;
        for (const auto& z : zs) {
            try {
                Poly f0q = mv_to_poly(embed_poly(alg->f0m, alg->d + 1, z, q), Fq);
                if (f0q.degree() != alg->d) { ok = false; break; }
                Poly df = f0q.derivative();
                if (df.is_zero() || gcd(f0q, df).degree() != 0) { ok = false; break; }
                Poly repq = mv_to_poly(embed_poly(delta.rep(), 1, z, q), Fq);
                if (gcd(repq, f0q).degree() != 0 || repq.is_zero()) { ok = false; break; }
                // Residue screen: delta must be a p-th power in every factor field.
                for (const auto& [g, m] : factor_mod_q(f0q, seed)) {
                    (void)m;
                    FqExt F(q.get_ui(), poly_to_words(g));
                    std::vector<std::uint64_t> w = poly_to_words(repq % g);
                    w.resize(static_cast<size_t>(g.degree()), 0);
                    if (!F.is_pth_power(w, p))
                        return {PthPowerResult::Kind::NonResidue, std::nullopt, q};
                }
            } catch (const MathError&) {
                ok = false;
                break;
            }
        }
        if (ok) good_primes.push_back(q);
    }

    // Root reconstruction at up to three of the screened primes.
    for (size_t attempt = 0; attempt < std::min<size_t>(3, good_primes.size()); ++attempt) {
        const mpz_class& qa = good_primes[attempt];
        FieldSpec Fq = FieldSpec::finite_prime(qa);
        std::vector<mpz_class> zs = spec.kind() == FieldKind::Cyclotomic
                                        ? cyclotomic_roots_mod_q(p, qa)
                                        : std::vector<mpz_class>{0};
        std::vector<Embedding> embs;
        size_t total_factors = 0;
        for (const auto& z : zs) {
            Embedding E(Fq);
            E.z = z;
            E.f0q = mv_to_poly(embed_poly(alg->f0m, alg->d + 1, z, qa), Fq);
            E.repq = mv_to_poly(embed_poly(delta.rep(), 1, z, qa), Fq);
            for (const auto& [g, m] : factor_mod_q(E.f0q, seed)) {
                (void)m;
                FqExt F(qa.get_ui(), poly_to_words(g));
                std::vector<std::uint64_t> w = poly_to_words(E.repq % g);
                w.resize(static_cast<size_t>(g.degree()), 0);
                E.factors.push_back(g);
                E.local_delta.push_back(w);
                E.fields.push_back(F);
            }
            total_factors += E.factors.size();
            embs.push_back(std::move(E));
        }
        // One p-th root per factor; remaining choices differ by mu_p scalars.
        std::vector<std::vector<FqExt::Elt>> base_roots(embs.size());
        bool have_roots = true;
        for (size_t i = 0; i < embs.size() && have_roots; ++i) {
            for (size_t j = 0; j < embs[i].factors.size(); ++j) {
                auto r = embs[i].fields[j].pth_root(embs[i].local_delta[j], p, rng);
                if (!r) { have_roots = false; break; }
                base_roots[i].push_back(*r);
            }
        }
        if (!have_roots) continue;
        // Scalar p-th root of unity in F_q.
        std::uint64_t qq = qa.get_ui(), zq = 1;
        for (std::uint64_t g = 2; g < qq; ++g) {
            std::uint64_t w = mod_pow(g, (qq - 1) / static_cast<std::uint64_t>(p), qq);
            if (w != 1) { zq = w; break; }
        }
        // Enumerate root combinations (first factor fixed: scalars cover it).
        size_t free_slots = total_factors > 0 ? total_factors - 1 : 0;
        double combo_count = 1;
        for (size_t i = 0; i < free_slots; ++i) combo_count *= p;
        if (combo_count > 2048) continue;
        std::vector<int> t(free_slots, 0);
        for (;;) {
            // Assemble the candidate root mod q per embedding via CRT.
            std::vector<Poly> theta0;
            size_t slot = 0;
            for (size_t i = 0; i < embs.size(); ++i) {
                Poly th = Poly::zero(Fq);
                for (size_t j = 0; j < embs[i].factors.size(); ++j) {
                    FqExt::Elt r = base_roots[i][j];
                    int twist = (i == 0 && j == 0) ? 0 : t[slot++];
                    if (twist) {
                        std::uint64_t s = 1;
                        for (int w = 0; w < twist; ++w) s = mod_mul(s, zq, qq);
                        FqExt::Elt sc = embs[i].fields[j].from_scalar(s);
                        r = embs[i].fields[j].mul(r, sc);
                    }
                    Poly rp = words_to_poly(Fq, r);
                    Poly M = Poly::constant(FieldElem::one(Fq));
                    for (size_t u = 0; u < embs[i].factors.size(); ++u)
                        if (u != j) M = M * embs[i].factors[u];
                    auto bez = xgcd(M % embs[i].factors[j], embs[i].factors[j]);
                    Poly uu = bez.u.scaled(bez.g.coeff(0).inverse());
                    th = (th + rp * M * uu) % embs[i].f0q;
                }
                theta0.push_back(th);
            }
            // Newton lift each embedding to high precision, with the inverse of
            // p*theta^{p-1} lifted alongside.
            std::vector<MV> thetas, zlifts;
            mpz_class M = qa;
            thetas.reserve(embs.size());
            std::vector<MV> winvs;
            std::vector<mpz_class> zvals, zwinvs;
            bool lift_ok = true;
            for (size_t i = 0; i < embs.size() && lift_ok; ++i) {
                MV th(static_cast<size_t>(alg->d), 0);
                for (int j = 0; j <= theta0[i].degree(); ++j)
                    th[static_cast<size_t>(j)] = theta0[i].coeff(j).residue();
                MV f0i = embed_poly(alg->f0m, alg->d + 1, embs[i].z, qa);
                MV dpow = mv_pow(th, p - 1, f0i, qa);
                for (auto& cc : dpow) cc = (cc * p) % qa;
                Poly dp = mv_to_poly(dpow, Fq);
                auto bez = xgcd(dp, embs[i].f0q);
                if (bez.g.degree() != 0) { lift_ok = false; break; }
                Poly w0 = bez.u.scaled(bez.g.coeff(0).inverse());
                MV w(static_cast<size_t>(alg->d), 0);
                for (int j = 0; j <= w0.degree(); ++j) w[static_cast<size_t>(j)] = w0.coeff(j).residue();
                thetas.push_back(th);
                winvs.push_back(w);
                // Lift the embedding value z (root of Phi_p) alongside.
                zvals.push_back(embs[i].z);
                if (spec.kind() == FieldKind::Cyclotomic) {
                    // Phi_p'(z) inverse mod q.
                    mpz_class dval = 0, zp = 1;
                    for (int e = 1; e < p; ++e) {
                        dval = (dval + e * zp) % qa;
                        zp = (zp * embs[i].z) % qa;
                    }
                    mpz_class inv;
                    if (!mpz_invert(inv.get_mpz_t(), dval.get_mpz_t(), qa.get_mpz_t())) {
                        lift_ok = false;
                        break;
                    }
                    zwinvs.push_back(inv);
                } else {
                    zwinvs.push_back(0);
                }
            }
            if (!lift_ok) { /* fall through to next combo */ }
            else {
                while (M < bound) {
                    M = M * M;
                    for (size_t i = 0; i < embs.size(); ++i) {
                        if (spec.kind() == FieldKind::Cyclotomic) {
                            // z' = z - Phi_p(z) * zw;  zw' = zw (2 - Phi_p'(z') zw)
                            mpz_class phi = 0, zp = 1;
                            for (int e = 0; e < p; ++e) {
                                phi = (phi + zp) % M;
                                zp = (zp * zvals[i]) % M;
                            }
                            zvals[i] = (zvals[i] - phi * zwinvs[i]) % M;
                            if (zvals[i] < 0) zvals[i] += M;
                            mpz_class dphi = 0;
                            zp = 1;
                            for (int e = 1; e < p; ++e) {
                                dphi = (dphi + e * zp) % M;
                                zp = (zp * zvals[i]) % M;
                            }
                            zwinvs[i] = (zwinvs[i] * (2 - dphi * zwinvs[i])) % M;
                            if (zwinvs[i] < 0) zwinvs[i] += M;
                        }
                        MV f0i = embed_poly(alg->f0m, alg->d + 1, zvals[i], M);
                        MV del = embed_poly(delta.rep(), alg->d, zvals[i], M);
                        del.resize(static_cast<size_t>(alg->d), 0);
                        MV& th = thetas[i];
                        MV& w = winvs[i];
                        th.resize(static_cast<size_t>(alg->d), 0);
                        w.resize(static_cast<size_t>(alg->d), 0);
                        MV thp = mv_pow(th, p, f0i, M);
                        MV err = mv_sub(thp, del, M);
                        MV corr = mv_mul(err, w, f0i, M);
                        th = mv_sub(th, corr, M);
                        // w' = w (2 - p th^{p-1} w)
                        MV dpow = mv_pow(th, p - 1, f0i, M);
                        for (auto& cc : dpow) cc = (cc * p) % M;
                        MV pw = mv_mul(dpow, w, f0i, M);
                        MV two(static_cast<size_t>(alg->d), 0);
                        two[0] = 2;
                        MV upd = mv_sub(two, pw, M);
                        w = mv_mul(w, upd, f0i, M);
                    }
                }
                // Reconstruct base-field coefficients.
                bool rec_ok = true;
                std::vector<FieldElem> coeffs;
                if (spec.kind() == FieldKind::Rationals) {
                    for (int j = 0; j < alg->d && rec_ok; ++j) {
                        auto rr = rational_reconstruct(thetas[0][static_cast<size_t>(j)], M);
                        if (!rr) { rec_ok = false; break; }
                        coeffs.push_back(FieldElem::from_mpq(spec, *rr));
                    }
                } else {
                    // Solve the Vandermonde system in the lifted embedding values.
                    int dimu = p - 1;
                    for (int j = 0; j < alg->d && rec_ok; ++j) {
                        std::vector<std::vector<mpz_class>> A;
                        std::vector<mpz_class> v;
                        for (size_t i = 0; i < embs.size(); ++i) {
                            std::vector<mpz_class> row;
                            mpz_class zp = 1;
                            for (int tq = 0; tq < dimu; ++tq) {
                                row.push_back(zp);
                                zp = (zp * zvals[i]) % M;
                            }
                            A.push_back(row);
                            v.push_back(thetas[i][static_cast<size_t>(j)]);
                        }
                        std::vector<mpz_class> sol;
                        try {
                            sol = solve_mod(A, v, M);
                        } catch (const MathError&) {
                            rec_ok = false;
                            break;
                        }
                        std::vector<mpq_class> cy;
                        for (const auto& s : sol) {
                            auto rr = rational_reconstruct(s, M);
                            if (!rr) { rec_ok = false; break; }
                            cy.push_back(*rr);
                        }
                        if (!rec_ok) break;
                        coeffs.push_back(FieldElem::from_cyclotomic_coeffs(spec, cy));
                    }
                }
                if (rec_ok) {
                    EtaleElem th(alg, Poly::from_coeffs(spec, coeffs));
                    if (th.pow(p) == delta) return {PthPowerResult::Kind::Root, th, 0};
                }
            }
            // Next combination.
            size_t j = 0;
            while (j < free_slots && ++t[j] == p) t[j++] = 0;
            if (j == free_slots) break;
            if (free_slots == 0) break;
        }
    }
    return {PthPowerResult::Kind::Inconclusive, std::nullopt, 0};
}

}  // namespace cycdesc
