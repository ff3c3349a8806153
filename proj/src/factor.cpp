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

#include <algorithm>
#include <map>
#include <random>

#include "cycdesc/poly.hpp"

namespace cycdesc {

namespace {

// ---------------------------------------------------------------------------
// Cantor-Zassenhaus over F_q
// ---------------------------------------------------------------------------

Poly random_poly_below(const FieldSpec& spec, int deg, std::mt19937_64& rng) {
    std::vector<FieldElem> c;
    unsigned long q = spec.modulus().get_ui();
    for (int i = 0; i < deg; ++i)
        c.push_back(FieldElem::from_mpz(spec, mpz_class(static_cast<unsigned long>(rng() % q))));
    return Poly::from_coeffs(spec, std::move(c));
}

// Splits a monic squarefree product of irreducibles all of degree d.
void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const FieldSpec& spec = f.spec();
    mpz_class q = spec.modulus();
    Poly one = Poly::constant(FieldElem::one(spec));
    for (;;) {
        Poly a = random_poly_below(spec, f.degree(), rng);
        if (a.degree() < 1) continue;
        Poly t(spec);
        if (q == 2) {
            // Trace map sum a^{2^i}, i < d.
            Poly acc = a % f, cur = a % f;
            for (int i = 1; i < d; ++i) {
                cur = (cur * cur) % f;
                acc = acc + cur;
            }
            t = acc;
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            t = pow_mod(a, e, f) - one;
        }
        if (t.is_zero()) continue;
        Poly g = gcd(t, f);
        if (g.degree() == 0 || g.degree() == f.degree()) continue;
        equal_degree_split(g, d, rng, out);
        equal_degree_split(f / g, d, rng, out);
        return;
    }
}

// Monic squarefree input: distinct-degree then equal-degree splitting.
std::vector<Poly> factor_squarefree_mod_q(Poly f, std::mt19937_64& rng) {
    const FieldSpec& spec = f.spec();
    mpz_class q = spec.modulus();
    std::vector<Poly> out;
    Poly h = Poly::x(spec);
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (f.degree() < 2 * d) {
            out.push_back(f);
            break;
        }
        h = pow_mod(h, q, f);
        Poly g = gcd(h - Poly::x(spec), f);
        if (g.degree() > 0) {
            equal_degree_split(g, d, rng, out);
            f = f / g;
            h = h % f;
        }
    }
    return out;
}

// Char-p squarefree decomposition (multiplicities may reach or exceed p).
std::vector<std::pair<Poly, int>> squarefree_mod_p(const Poly& f) {
    const FieldSpec& spec = f.spec();
    unsigned long p = spec.modulus().get_ui();
    std::vector<std::pair<Poly, int>> out;
    Poly w = f.monic();
    Poly d = w.derivative();
    if (d.is_zero()) {
        // w = u(x^p); in a prime field the p-th root keeps the coefficients.
        std::vector<FieldElem> c;
        for (int i = 0; i <= w.degree(); i += static_cast<int>(p)) c.push_back(w.coeff(i));
        Poly root = Poly::from_coeffs(spec, std::move(c));
        for (auto& [g, m] : squarefree_mod_p(root)) out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }
    Poly c0 = gcd(w, d);
    Poly u = w / c0;
    int i = 1;
    while (u.degree() > 0) {
        Poly y = gcd(u, c0);
        Poly z = u / y;
        if (z.degree() > 0) out.emplace_back(z, i);
        ++i;
        u = y;
        c0 = c0 / y;
    }
    if (c0.degree() > 0) {
        // Remaining part is a p-th power.
        std::vector<FieldElem> c;
        for (int j = 0; j <= c0.degree(); j += static_cast<int>(p)) c.push_back(c0.coeff(j));
        Poly root = Poly::from_coeffs(spec, std::move(c));
        for (auto& [g, m] : squarefree_mod_p(root)) out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers for Zassenhaus
// ---------------------------------------------------------------------------

using ZPoly = std::vector<mpz_class>;  // ascending, trimmed

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    a.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

// Exact division over Z; returns false when not divisible.
bool zdiv_exact(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    if (b.empty()) return false;
    ZPoly r = a;
    q.assign(a.size(), 0);
    while (zdeg(r) >= zdeg(b)) {
        mpz_class qc, rem;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), b.back().get_mpz_t());
        if (rem != 0) return false;
        int shift = zdeg(r) - zdeg(b);
        q[static_cast<size_t>(shift)] = qc;
        for (size_t i = 0; i < b.size(); ++i) r[static_cast<size_t>(shift) + i] -= qc * b[i];
        ztrim(r);
        if (r.empty()) break;
    }
    if (!r.empty()) return false;
    ztrim(q);
    return true;
}

mpz_class zcontent(const ZPoly& f) {
    mpz_class g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zmod(const ZPoly& f, const mpz_class& m) {
    ZPoly r = f;
    for (auto& c : r) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    ztrim(r);
    return r;
}

ZPoly zsymmetric(const ZPoly& f, const mpz_class& m) {
    ZPoly r = zmod(f, m);
    mpz_class half = m / 2;
    for (auto& c : r)
        if (c > half) c -= m;
    ztrim(r);
    return r;
}

Poly zpoly_to_field(const ZPoly& f, const FieldSpec& spec) {
    std::vector<FieldElem> c;
    c.reserve(f.size());
    for (const auto& v : f) c.push_back(FieldElem::from_mpz(spec, v));
    return Poly::from_coeffs(spec, std::move(c));
}

ZPoly field_to_zpoly(const Poly& f) {
    // FinitePrime coefficients as least nonnegative residues.
    ZPoly r;
    for (int i = 0; i <= f.degree(); ++i) r.push_back(f.coeff(i).residue());
    ztrim(r);
    return r;
}

ZPoly rational_to_primitive_z(const Poly& f, mpq_class& content) {
    // f = content * primitive integer polynomial, lc of the latter positive.
    mpz_class den = 1;
    for (int i = 0; i <= f.degree(); ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.coeff(i).rational().get_den().get_mpz_t());
    ZPoly z;
    for (int i = 0; i <= f.degree(); ++i) {
        mpq_class v = f.coeff(i).rational() * den;
        z.push_back(v.get_num());
    }
    mpz_class cont = zcontent(z);
    if (cont == 0) cont = 1;
    if (z.back() < 0) cont = -cont;
    for (auto& c : z) c /= cont;
    content = mpq_class(cont, den);
    content.canonicalize();
    return z;
}

// Hensel lift F = g*h (mod ell^k), starting from a coprime factorization mod ell.
// F, g, h monic; g, h given mod ell.  Linear steps.
void hensel_lift_pair(const ZPoly& F, ZPoly& g, ZPoly& h, const mpz_class& ell, int k) {
    FieldSpec fp = FieldSpec::finite_prime(ell);
    Poly gp = zpoly_to_field(g, fp), hp = zpoly_to_field(h, fp);
    auto bez = xgcd(gp, hp);
    if (bez.g.degree() != 0) throw MathError("hensel: factors not coprime mod ell");
    Poly a = bez.u, b = bez.v;  // a*g + b*h = 1 (mod ell)
    mpz_class m = ell;
    for (int step = 1; step < k; ++step) {
        // e = (F - g*h)/m mod ell
        ZPoly diff = zsub(F, zmul(g, h));
        ZPoly e;
        e.reserve(diff.size());
        for (auto& c : diff) e.push_back(c / m);
        Poly ep = zpoly_to_field(zmod(e, ell), fp);
        // u*h + v*g = e (mod ell) with deg u < deg g: u = b*e mod g, v = a*e + floor(b*e/g)*h.
        auto [qq, u] = (b * ep).divmod(gp);
        Poly v = (a * ep + qq * hp) % hp;
        ZPoly uz = field_to_zpoly(u), vz = field_to_zpoly(v);
        g.resize(std::max(g.size(), uz.size()), 0);
        for (size_t i = 0; i < uz.size(); ++i) g[i] += m * uz[i];
        h.resize(std::max(h.size(), vz.size()), 0);
        for (size_t i = 0; i < vz.size(); ++i) h[i] += m * vz[i];
        m *= ell;
        g = zmod(g, m);
        h = zmod(h, m);
        // Keep monic representatives.
        if (g.back() != 1 || h.back() != 1) throw MathError("hensel: lost monicity");
    }
}

// Lifts a monic factorization F = prod(parts) from mod ell to mod ell^k.
std::vector<ZPoly> hensel_lift_tree(const ZPoly& F, std::vector<ZPoly> parts, const mpz_class& ell, int k) {
    if (parts.size() == 1) {
        mpz_class m;
        mpz_pow_ui(m.get_mpz_t(), ell.get_mpz_t(), static_cast<unsigned long>(k));
        return {zmod(F, m)};
    }
    size_t half = parts.size() / 2;
    ZPoly g{1}, h{1};
    std::vector<ZPoly> left(parts.begin(), parts.begin() + static_cast<long>(half));
    std::vector<ZPoly> right(parts.begin() + static_cast<long>(half), parts.end());
    for (const auto& p : left) g = zmod(zmul(g, p), ell);
    for (const auto& p : right) h = zmod(zmul(h, p), ell);
    hensel_lift_pair(F, g, h, ell, k);
    auto lg = hensel_lift_tree(g, std::move(left), ell, k);
    auto lh = hensel_lift_tree(h, std::move(right), ell, k);
    lg.insert(lg.end(), lh.begin(), lh.end());
    return lg;
}

// Factors a monic squarefree integer polynomial into monic irreducible integer factors.
std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly& F) {
    int n = zdeg(F);
    if (n <= 1) return {F};
    // Good prime: ell coprime to lc (monic, automatic) with F squarefree mod ell.
    mpz_class ell = 2;
    for (;;) {
        FieldSpec fp = FieldSpec::finite_prime(ell);
        Poly fm = zpoly_to_field(zmod(F, ell), fp);
        if (fm.degree() == n) {
            Poly d = fm.derivative();
            if (!d.is_zero() && gcd(fm, d).degree() == 0) break;
        }
        mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t());
    }
    FieldSpec fp = FieldSpec::finite_prime(ell);
    std::mt19937_64 rng(0x5eedULL);  // factor ordering is canonicalized below
    std::vector<Poly> modular = factor_squarefree_mod_q(zpoly_to_field(zmod(F, ell), fp).monic(), rng);
    std::sort(modular.begin(), modular.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i) {
            mpz_class ca = a.coeff(i).residue(), cb = b.coeff(i).residue();
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    if (modular.size() == 1) return {F};

    // Landau-Mignotte bound on factor coefficients, times 2 for the symmetric range.
    mpz_class maxc = 0;
    for (const auto& c : F) {
        mpz_class a = abs(c);
        if (a > maxc) maxc = a;
    }
    mpz_class bound = maxc;
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
    bound *= two_n;
    bound = bound * (n + 1) * 2 + 1;
    int k = 1;
    mpz_class m = ell;
    while (m < bound) {
        m *= ell;
        ++k;
    }

    std::vector<ZPoly> start;
    start.reserve(modular.size());
    for (const auto& p : modular) start.push_back(field_to_zpoly(p));
    std::vector<ZPoly> lifted = hensel_lift_tree(zmod(F, m), std::move(start), ell, k);

    // Exhaustive subset recombination.
    std::vector<ZPoly> out;
    ZPoly rem = F;
    std::vector<bool> used(lifted.size(), false);
    size_t alive = lifted.size();
    for (size_t card = 1; card <= lifted.size() && alive > 0; ++card) {
        if (2 * card > alive) break;
        std::vector<size_t> avail;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) avail.push_back(i);
        if (card > avail.size()) break;
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        bool restart = false;
        for (;;) {
            ZPoly cand{1};
            for (size_t i : idx) cand = zmod(zmul(cand, lifted[avail[i]]), m);
            cand = zsymmetric(cand, m);
            ZPoly q;
            if (zdiv_exact(rem, cand, q)) {
                out.push_back(cand);
                for (size_t i : idx) used[avail[i]] = true;
                alive -= card;
                rem = q;
                restart = true;
                break;
            }
            // next subset of the same cardinality
            size_t i = card;
            while (i > 0) {
                --i;
                if (idx[i] != avail.size() - card + i) {
                    ++idx[i];
                    for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) {
                    restart = false;
                    i = SIZE_MAX;
                    break;
                }
            }
            if (i == SIZE_MAX) break;
        }
        if (restart) card = 0;  // re-run from singletons against the reduced remainder
    }
    if (zdeg(rem) > 0) out.push_back(rem);
    return out;
}

}  // namespace

SquarefreeDecomposition squarefree_decompose(const Poly& f) {
    const FieldSpec& spec = f.spec();
    mpz_class ch = spec.characteristic();
    if (ch == 0 || ch > f.degree()) return yun_squarefree(f);
    SquarefreeDecomposition out{f.lc(), {}};
    auto parts = squarefree_mod_p(f);
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    out.parts = std::move(parts);
    return out;
}

std::vector<std::pair<Poly, int>> factor_mod_q(const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw MathError("factor_mod_q of zero polynomial");
    if (f.spec().kind() != FieldKind::FinitePrime) throw MathError("factor_mod_q needs a prime field");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() == 0) return out;
    for (auto& [part, mult] : squarefree_mod_p(f)) {
        for (auto& irr : factor_squarefree_mod_q(part, rng)) out.emplace_back(irr, mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            mpz_class ca = a.first.coeff(i).residue(), cb = b.first.coeff(i).residue();
            if (ca != cb) return ca < cb;
        }
        return a.second < b.second;
    });
    return out;
}

Poly RationalFactorization::expand(const FieldSpec& spec) const {
    Poly r = Poly::constant(FieldElem::from_mpq(spec, content));
    for (const auto& [g, m] : parts)
        for (int i = 0; i < m; ++i) r = r * g;
    return r;
}

RationalFactorization factor_over_Q(const Poly& f) {
    if (f.is_zero()) throw MathError("factor_over_Q of zero polynomial");
    if (f.spec().kind() != FieldKind::Rationals) throw MathError("factor_over_Q needs rational coefficients");
    if (f.degree() > 24) throw DegreeTooLarge();
    const FieldSpec Q = FieldSpec::rationals();
    RationalFactorization out{mpq_class(f.is_constant() ? f.coeff(0).rational() : mpq_class(1)), {}};
    if (f.degree() < 1) return out;

    auto sq = yun_squarefree(f);
    out.content = sq.content.rational();
    std::map<std::string, std::pair<Poly, int>> acc;  // canonical ordering by text key
    for (auto& [part, mult] : sq.parts) {
        mpq_class cont;
        ZPoly G = rational_to_primitive_z(part, cont);
        mpq_class powed = 1;
        for (int i = 0; i < mult; ++i) powed *= cont;
        out.content *= powed;
        out.content.canonicalize();
        int n = zdeg(G);
        if (n == 0) continue;
        // Monicize: Ghat(y) = lc^{n-1} G(y/lc) is monic with integer coefficients.
        mpz_class lc = G.back();
        ZPoly Ghat(G.size());
        Ghat[static_cast<size_t>(n)] = 1;
        mpz_class powlc = 1;
        for (int i = n - 1; i >= 0; --i) {
            Ghat[static_cast<size_t>(i)] = G[static_cast<size_t>(i)] * powlc;
            powlc *= lc;
        }
        // Shared factor of a monic normalization is 1 at the top; make primitive anyway.
        std::vector<ZPoly> hats = factor_monic_squarefree_z(Ghat);
        mpz_class check_lc = 1;
        std::vector<ZPoly> facs;
        for (const auto& H : hats) {
            // Map back: primitive part of H(lc * x).
            ZPoly back(H.size());
            mpz_class p2 = 1;
            for (size_t i = 0; i < H.size(); ++i) {
                back[i] = H[i] * p2;
                p2 *= lc;
            }
            mpz_class c = zcontent(back);
            if (back.back() < 0) c = -c;
            for (auto& x : back) x /= c;
            facs.push_back(back);
            check_lc *= back.back();
        }
        // The product of the primitive factors equals G up to the rational unit lc/check_lc.
        mpq_class unit(lc, check_lc);
        unit.canonicalize();
        for (int i = 0; i < mult; ++i) out.content *= unit;
        out.content.canonicalize();
        for (auto& F : facs) {
            Poly pf = zpoly_to_field(F, Q);
            auto key = std::to_string(pf.degree()) + "|" + pf.to_string();
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, std::make_pair(pf, mult));
            else
                it->second.second += mult;
        }
    }
    for (auto& [k, v] : acc) out.parts.push_back(v);
    std::sort(out.parts.begin(), out.parts.end(), [](const auto& a, const auto& b) {
        return a.first.degree() < b.first.degree();
    });
    return out;
}

}  // namespace cycdesc
