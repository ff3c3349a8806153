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

#include "cycdesc/gamma.hpp"

#include <algorithm>
#include <set>

#include "cycdesc/ffext.hpp"

namespace cycdesc {

GammaElem::GammaElem(EtaleElem delta, FieldElem n) : delta_(std::move(delta)), n_(std::move(n)) {
    const auto& alg = delta_.algebra();
    if (n_.is_zero()) throw NotInGamma(FieldElem::zero(alg->base), n_);
    FieldElem nd = weighted_norm(delta_);
    FieldElem np = n_.pow(alg->p);
    if (nd != np) throw NotInGamma(nd, np);
}

GammaElem gamma_make(const EtaleElem& delta, const FieldElem& n) { return GammaElem(delta, n); }

GammaElem chi(const EtaleElem& theta) {
    const auto& alg = theta.algebra();
    return GammaElem(theta.pow(alg->p), weighted_norm(theta));
}

GammaElem iota(const EtaleAlgebraPtr& alg, const FieldElem& x) {
    if (x.is_zero()) throw NotInvertible();
    return GammaElem(EtaleElem::scalar(alg, x), x.pow(alg->degf / alg->p));
}

GammaElem GammaElem::operator*(const GammaElem& o) const {
    return GammaElem(delta_ * o.delta_, n_ * o.n_);
}

GammaElem GammaElem::inverse() const { return GammaElem(delta_.inverse(), n_.inverse()); }

std::string GammaElem::to_string() const {
    return "delta = " + delta_.rep().to_string() + " ; n = " + n_.to_string();
}

// ---------------------------------------------------------------------------
// Support computation
// ---------------------------------------------------------------------------

namespace {

void add_prime_factors(std::set<mpz_class>& out, mpz_class v) {
    v = abs(v);
    if (v <= 1) return;
    for (mpz_class d = 2; d * d <= v && d < 1000000; d += (d == 2 ? 1 : 2)) {
        if (v % d == 0) {
            out.insert(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) {
        if (!is_prime(v)) throw MathError("support factorization failed: composite cofactor");
        out.insert(v);
    }
}

void add_rational_support(std::set<mpz_class>& out, const mpq_class& v) {
    add_prime_factors(out, v.get_num());
    add_prime_factors(out, v.get_den());
}

}  // namespace

std::vector<mpz_class> gamma_support(const GammaElem& g) {
    const auto& alg = g.algebra();
    if (alg->base.kind() != FieldKind::Rationals) return {};
    std::set<mpz_class> s;
    s.insert(alg->p);
    add_rational_support(s, alg->c.rational());
    add_rational_support(s, alg->c0.rational());
    FieldElem disc = resultant(alg->f0m, alg->f0m.derivative());
    add_rational_support(s, disc.rational());
    for (int i = 0; i <= g.delta().rep().degree(); ++i)
        add_rational_support(s, g.delta().rep().coeff(i).rational());
    add_rational_support(s, g.n().rational());
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// The S-supported membership search
// ---------------------------------------------------------------------------

namespace {

std::vector<FieldElem> mu_norms(const EtaleAlgebraPtr& alg) {
    if (has_pth_roots_of_unity(alg->base, alg->p)) {
        std::vector<FieldElem> out;
        for (const auto& eta : mu_p_list(alg)) out.push_back(weighted_norm(eta));
        return out;
    }
    // Base Q with p odd: a factor field contains zeta_p only if p-1 divides
    // its degree; when no factor degree is even the kernel is trivial.
    for (const auto& h : etale_field_factors(alg))
        if (h.degree() % (alg->p - 1) == 0)
            throw FactorizationUnavailable("cannot enumerate mu_p over this base");
    return {FieldElem::one(alg->base)};
}

std::vector<EtaleElem> mu_elems(const EtaleAlgebraPtr& alg) {
    if (has_pth_roots_of_unity(alg->base, alg->p)) return mu_p_list(alg);
    for (const auto& h : etale_field_factors(alg))
        if (h.degree() % (alg->p - 1) == 0)
            throw FactorizationUnavailable("cannot enumerate mu_p over this base");
    return {EtaleElem::one(alg)};
}

// One exact membership check: is delta / c = theta^p with the n condition?
// Returns Yes with certificate, No (sound), or Inconclusive.
InChiIotaResult try_candidate(const EtaleElem& delta, const FieldElem& cval,
                              const FieldElem* n_target, int budget, std::uint64_t seed,
                              bool& saw_inconclusive) {
    const auto& alg = delta.algebra();
    EtaleElem shifted = delta * EtaleElem::scalar(alg, cval.inverse());
    PthPowerResult r = pth_power_test(shifted, budget, seed);
    if (r.kind == PthPowerResult::Kind::Inconclusive) {
        saw_inconclusive = true;
        return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
    }
    if (r.kind == PthPowerResult::Kind::NonResidue)
        return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
    EtaleElem theta = *r.root;
    if (!n_target) return {InChiIotaResult::Kind::Yes, theta, cval};
    FieldElem cshift = cval.pow(alg->degf / alg->p);
    for (const auto& eta : mu_elems(alg)) {
        EtaleElem cand = theta * eta;
        if (weighted_norm(cand) * cshift == *n_target)
            return {InChiIotaResult::Kind::Yes, cand, cval};
    }
    return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
}

InChiIotaResult search_ff(const GammaElem& g, bool use_iota, int budget, std::uint64_t seed) {
    const auto& alg = g.algebra();
    const FieldSpec& spec = alg->base;
    std::uint64_t q = spec.modulus().get_ui();
    int p = alg->p;
    std::vector<FieldElem> candidates = {FieldElem::one(spec)};
    if (use_iota && (q - 1) % static_cast<std::uint64_t>(p) == 0) {
        for (std::uint64_t w = 2; w < q; ++w) {
            if (mod_pow(w, (q - 1) / static_cast<std::uint64_t>(p), q) != 1) {
                for (int i = 1; i < p; ++i)
                    candidates.push_back(
                        FieldElem::from_mpz(spec, mpz_class(static_cast<unsigned long>(mod_pow(
                                                      w, static_cast<std::uint64_t>(i), q)))));
                break;
            }
        }
    }
    bool inconclusive = false;
    for (const auto& c : candidates) {
        auto r = try_candidate(g.delta(), c, &g.n(), budget, seed, inconclusive);
        if (r.kind == InChiIotaResult::Kind::Yes) return r;
    }
    if (inconclusive) return {InChiIotaResult::Kind::Inconclusive, std::nullopt, std::nullopt};
    return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
}

// Character screen over Q: for each good prime q and each irreducible factor
// of f0 mod q, membership of delta/c in the local p-th powers is a linear
// condition on the exponent vector of c.  Solve the system over F_p and only
// run the full p-th power test on the surviving candidates.
InChiIotaResult search_q(const EtaleElem& delta, const FieldElem* n_target, bool use_iota,
                         std::vector<mpz_class> S, int budget, std::uint64_t seed) {
    const auto& alg = delta.algebra();
    const FieldSpec& spec = alg->base;
    int p = alg->p;
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());

    std::vector<mpq_class> gens;
    if (use_iota) {
        if (p == 2) gens.push_back(mpq_class(-1));
        for (const auto& s : S) gens.push_back(mpq_class(s));
    }
    size_t U = gens.size();

    // Gather character rows.  Screening primes are cheap compared with the
    // candidate p-th power tests, so we keep adding them beyond the budget
    // until the solution space is small enough to enumerate exactly.
    auto screen_rank = [&](const std::vector<std::vector<int>>& rs) {
        std::vector<std::vector<int>> m = rs;
        size_t rk = 0;
        for (size_t col = 0; col < U && rk < m.size(); ++col) {
            size_t piv = SIZE_MAX;
            for (size_t r = rk; r < m.size(); ++r)
                if (m[r][col] % p != 0) { piv = r; break; }
            if (piv == SIZE_MAX) continue;
            std::swap(m[rk], m[piv]);
            for (size_t r = rk + 1; r < m.size(); ++r) {
                if (m[r][col] % p == 0) continue;
                int inv = static_cast<int>(mod_inv(
                    static_cast<std::uint64_t>(((m[rk][col] % p) + p) % p),
                    static_cast<std::uint64_t>(p)));
                int f = (m[r][col] * inv) % p;
                for (size_t j = 0; j <= U; ++j)
                    m[r][j] = ((m[r][j] - f * m[rk][j]) % p + p) % p;
            }
            ++rk;
        }
        return rk;
    };
    const int prime_cap = budget + 8 * static_cast<int>(U + 2);
    std::vector<std::vector<int>> rows;  // length U+1, last entry = rhs
    mpz_class q = p;
    int used = 0;
    while (used < prime_cap) {
        if (used >= budget) {
            size_t rk = screen_rank(rows);
            double cnt = 1;
            for (size_t i = rk; i < U && cnt <= 16; ++i) cnt *= p;
            if (cnt <= 16) break;
        }
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
        if ((q - 1) % p != 0) continue;
        if (std::find(S.begin(), S.end(), q) != S.end()) continue;
        FieldSpec Fq = FieldSpec::finite_prime(q);
        std::uint64_t qq = q.get_ui();
        // Reduce f0 and delta mod q; skip primes touching denominators.
        auto reduce_poly = [&](const Poly& f) -> std::optional<Poly> {
            std::vector<FieldElem> c;
            for (int i = 0; i <= f.degree(); ++i) {
                const mpq_class v = f.coeff(i).rational();
                mpz_class den_inv;
                if (!mpz_invert(den_inv.get_mpz_t(), v.get_den().get_mpz_t(), q.get_mpz_t()))
                    return std::nullopt;
                mpz_class r = v.get_num() * den_inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
                c.push_back(FieldElem::from_mpz(Fq, r));
            }
            return Poly::from_coeffs(Fq, std::move(c));
        };
        auto f0q = reduce_poly(alg->f0m);
        if (!f0q || f0q->degree() != alg->d) continue;
        Poly df = f0q->derivative();
        if (df.is_zero() || gcd(*f0q, df).degree() != 0) continue;
        auto repq = reduce_poly(delta.rep());
        if (!repq || repq->is_zero() || gcd(*repq, *f0q).degree() != 0) continue;
        // Scalar p-th root of unity mod q for discrete logs.
        std::uint64_t zq = 1;
        for (std::uint64_t w = 2; w < qq; ++w) {
            std::uint64_t t = mod_pow(w, (qq - 1) / static_cast<std::uint64_t>(p), qq);
            if (t != 1) { zq = t; break; }
        }
        auto dlog = [&](std::uint64_t v) -> int {
            std::uint64_t acc = 1;
            for (int i = 0; i < p; ++i) {
                if (acc == v) return i;
                acc = mod_mul(acc, zq, qq);
            }
            return -1;
        };
        bool prime_ok = true;
        std::vector<std::vector<int>> local_rows;
        for (const auto& [gfac, m] : factor_mod_q(*f0q, seed)) {
            (void)m;
            FqExt F(qq, poly_to_words(gfac));
            mpz_class e = (F.order() - 1) / p;
            std::vector<std::uint64_t> w = poly_to_words(*repq % gfac);
            w.resize(static_cast<size_t>(gfac.degree()), 0);
            auto chi_of = [&](const FqExt::Elt& x) -> int {
                FqExt::Elt t = F.pow(x, e);
                for (size_t i = 1; i < t.size(); ++i)
                    if (t[i] != 0) return -1;
                return dlog(t[0]);
            };
            std::vector<int> row;
            for (const auto& gen : gens) {
                mpz_class den_inv, r;
                mpz_invert(den_inv.get_mpz_t(), gen.get_den().get_mpz_t(), q.get_mpz_t());
                r = gen.get_num() * den_inv;
                mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());
                if (r == 0) { prime_ok = false; break; }
                int v = chi_of(F.from_scalar(r.get_ui()));
                if (v < 0) { prime_ok = false; break; }
                row.push_back(v);
            }
            if (!prime_ok) break;
            int rhs = chi_of(w);
            if (rhs < 0) { prime_ok = false; break; }
            row.push_back(rhs);
            local_rows.push_back(std::move(row));
        }
        if (!prime_ok) continue;
        for (auto& r : local_rows) rows.push_back(std::move(r));
        ++used;
    }

    // Solve rows * e = rhs over F_p.
    size_t nrows = rows.size();
    std::vector<size_t> pivot_of_col(U, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < U && rank < nrows; ++col) {
        size_t piv = SIZE_MAX;
        for (size_t r = rank; r < nrows; ++r)
            if (rows[r][col] % p != 0) { piv = r; break; }
        if (piv == SIZE_MAX) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = static_cast<int>(mod_inv(static_cast<std::uint64_t>(rows[rank][col] % p),
                                           static_cast<std::uint64_t>(p)));
        for (auto& x : rows[rank]) x = (x * inv) % p;
        for (size_t r = 0; r < nrows; ++r) {
            if (r == rank || rows[r][col] % p == 0) continue;
            int f = rows[r][col] % p;
            for (size_t j = 0; j <= U; ++j) rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % p + p) % p;
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    for (size_t r = rank; r < nrows; ++r)
        if (rows[r][U] % p != 0)
            return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};

    // Particular solution and kernel basis.
    std::vector<int> part(U, 0);
    std::vector<size_t> free_cols;
    for (size_t col = 0; col < U; ++col) {
        if (pivot_of_col[col] != SIZE_MAX)
            part[col] = ((rows[pivot_of_col[col]][U] % p) + p) % p;
        else
            free_cols.push_back(col);
    }
    std::vector<std::vector<int>> kernel;
    for (size_t fc : free_cols) {
        std::vector<int> v(U, 0);
        v[fc] = 1;
        for (size_t col = 0; col < U; ++col)
            if (pivot_of_col[col] != SIZE_MAX)
                v[col] = ((-rows[pivot_of_col[col]][fc]) % p + p) % p;
        kernel.push_back(std::move(v));
    }
    double count = 1;
    for (size_t i = 0; i < kernel.size(); ++i) count *= p;
    if (count > 4096) return {InChiIotaResult::Kind::Inconclusive, std::nullopt, std::nullopt};

    bool inconclusive = false;
    std::vector<int> t(kernel.size(), 0);
    for (;;) {
        std::vector<int> e = part;
        for (size_t i = 0; i < kernel.size(); ++i)
            for (size_t j = 0; j < U; ++j) e[j] = (e[j] + t[i] * kernel[i][j]) % p;
        mpq_class c = 1;
        for (size_t j = 0; j < U; ++j)
            for (int w = 0; w < e[j]; ++w) c *= gens[j];
        FieldElem cval = FieldElem::from_mpq(spec, c);
        auto r = try_candidate(delta, cval, n_target, budget, seed, inconclusive);
        if (r.kind == InChiIotaResult::Kind::Yes) return r;
        size_t j = 0;
        while (j < t.size() && ++t[j] == p) t[j++] = 0;
        if (j == t.size()) break;
    }
    if (inconclusive) return {InChiIotaResult::Kind::Inconclusive, std::nullopt, std::nullopt};
    return {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
}

}  // namespace

InChiIotaResult in_chi_iota_subgroup(const GammaElem& g, const std::vector<mpz_class>& S,
                                     int prime_budget, std::uint64_t seed) {
    const FieldSpec& spec = g.algebra()->base;
    if (spec.kind() == FieldKind::FinitePrime) return search_ff(g, true, prime_budget, seed);
    if (spec.kind() != FieldKind::Rationals) throw UnsupportedBase();
    std::vector<mpz_class> full = S;
    auto base = gamma_support(g);
    full.insert(full.end(), base.begin(), base.end());
    return search_q(g.delta(), &g.n(), true, full, prime_budget, seed);
}

InChiIotaResult in_chi_subgroup(const GammaElem& g, int prime_budget, std::uint64_t seed) {
    const FieldSpec& spec = g.algebra()->base;
    if (spec.kind() == FieldKind::FinitePrime) return search_ff(g, false, prime_budget, seed);
    if (spec.kind() != FieldKind::Rationals) throw UnsupportedBase();
    return search_q(g.delta(), &g.n(), false, {}, prime_budget, seed);
}

GammaClass::GammaClass(GammaElem rep, ClassModulus modulus, std::vector<mpz_class> extra)
    : rep_(std::move(rep)), modulus_(modulus) {
    std::set<mpz_class> s(extra.begin(), extra.end());
    for (const auto& v : gamma_support(rep_)) s.insert(v);
    support_.assign(s.begin(), s.end());
}

Verdict class_eq(const GammaClass& a, const GammaClass& b, int prime_budget, std::uint64_t seed) {
    if (a.modulus() != b.modulus() || a.rep().algebra()->f0m != b.rep().algebra()->f0m ||
        a.rep().algebra()->p != b.rep().algebra()->p)
        throw ModulusMismatch();
    if (a.rep() == b.rep()) return Verdict::Equal;
    GammaElem g = a.rep() * b.rep().inverse();
    std::vector<mpz_class> S = a.support();
    S.insert(S.end(), b.support().begin(), b.support().end());
    InChiIotaResult r = a.modulus() == ClassModulus::ChiIota
                            ? in_chi_iota_subgroup(g, S, prime_budget, seed)
                            : in_chi_subgroup(g, prime_budget, seed);
    switch (r.kind) {
        case InChiIotaResult::Kind::Yes:
            return Verdict::Equal;
        case InChiIotaResult::Kind::No:
            return Verdict::Distinct;
        default:
            return Verdict::Inconclusive;
    }
}

FakeClass::FakeClass(EtaleElem delta, std::vector<mpz_class> support)
    : delta_(std::move(delta)), support_(std::move(support)) {}

FakeClass project_fake(const GammaElem& g) { return FakeClass(g.delta(), gamma_support(g)); }

Verdict fake_eq(const FakeClass& a, const FakeClass& b, int prime_budget, std::uint64_t seed) {
    const auto& alg = a.delta().algebra();
    if (alg->f0m != b.delta().algebra()->f0m || alg->p != b.delta().algebra()->p)
        throw ModulusMismatch();
    if (a.delta() == b.delta()) return Verdict::Equal;
    EtaleElem d = a.delta() * b.delta().inverse();
    const FieldSpec& spec = alg->base;
    InChiIotaResult r{InChiIotaResult::Kind::Inconclusive, std::nullopt, std::nullopt};
    if (spec.kind() == FieldKind::FinitePrime) {
        // Any n component works for the finite search; membership in
        // L*^p k* ignores it.
        bool inconclusive = false;
        std::uint64_t q = spec.modulus().get_ui();
        int p = alg->p;
        std::vector<FieldElem> candidates = {FieldElem::one(spec)};
        if ((q - 1) % static_cast<std::uint64_t>(p) == 0) {
            for (std::uint64_t w = 2; w < q; ++w) {
                if (mod_pow(w, (q - 1) / static_cast<std::uint64_t>(p), q) != 1) {
                    for (int i = 1; i < p; ++i)
                        candidates.push_back(FieldElem::from_mpz(
                            spec, mpz_class(static_cast<unsigned long>(
                                      mod_pow(w, static_cast<std::uint64_t>(i), q)))));
                    break;
                }
            }
        }
        r = {InChiIotaResult::Kind::No, std::nullopt, std::nullopt};
        for (const auto& c : candidates) {
            auto rc = try_candidate(d, c, nullptr, prime_budget, seed, inconclusive);
            if (rc.kind == InChiIotaResult::Kind::Yes) { r = rc; break; }
        }
        if (r.kind != InChiIotaResult::Kind::Yes && inconclusive)
            r = {InChiIotaResult::Kind::Inconclusive, std::nullopt, std::nullopt};
    } else if (spec.kind() == FieldKind::Rationals) {
        std::set<mpz_class> s(a.support().begin(), a.support().end());
        s.insert(b.support().begin(), b.support().end());
        for (int i = 0; i <= d.rep().degree(); ++i)
            add_rational_support(s, d.rep().coeff(i).rational());
        r = search_q(d, nullptr, true, {s.begin(), s.end()}, prime_budget, seed);
    } else {
        throw UnsupportedBase();
    }
    switch (r.kind) {
        case InChiIotaResult::Kind::Yes:
            return Verdict::Equal;
        case InChiIotaResult::Kind::No:
            return Verdict::Distinct;
        default:
            return Verdict::Inconclusive;
    }
}

Verdict fake_is_trivial(const FakeClass& a, int prime_budget, std::uint64_t seed) {
    FakeClass one(EtaleElem::one(a.delta().algebra()), {});
    return fake_eq(a, one, prime_budget, seed);
}

}  // namespace cycdesc
