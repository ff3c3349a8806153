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

#include "cycdesc/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace cycdesc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    std::ostringstream os;
    os << name << ":" << line << ": " << msg;
    throw ParseError(os.str());
}

long parse_long(const std::string& name, int line, const std::string& tok) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size()) fail(name, line, "trailing characters in integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(name, line, "invalid integer '" + tok + "'");
    }
}

}  // namespace

CurveSpec parse_curve_stream(std::istream& in, const std::string& name) {
    // key -> (value, line number); gathered first so that `base:` may appear
    // anywhere even though f/c0 literals need the base field to parse.
    std::map<std::string, std::pair<std::string, int>> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t colon = t.find(':');
        if (colon == std::string::npos) fail(name, lineno, "expected 'key: value'");
        std::string key = trim(t.substr(0, colon));
        std::string val = trim(t.substr(colon + 1));
        if (kv.count(key)) fail(name, lineno, "duplicate key '" + key + "'");
        kv[key] = {val, lineno};
    }
    if (!kv.count("p")) fail(name, lineno, "missing 'p:' line");
    if (!kv.count("f")) fail(name, lineno, "missing 'f:' line");

    FieldSpec base = FieldSpec::rationals();
    if (kv.count("base")) {
        auto [val, ln] = kv["base"];
        std::istringstream is(val);
        std::string kind, arg;
        is >> kind;
        if (kind == "Q") {
            base = FieldSpec::rationals();
        } else if (kind == "Fq") {
            if (!(is >> arg)) fail(name, ln, "base Fq needs a prime argument");
            mpz_class q(arg);
            if (!is_prime(q)) fail(name, ln, "base Fq " + arg + " is not prime");
            base = FieldSpec::finite_prime(q);
        } else if (kind == "Zeta") {
            if (!(is >> arg)) fail(name, ln, "base Zeta needs a prime argument");
            base = FieldSpec::cyclotomic(static_cast<int>(parse_long(name, ln, arg)));
        } else {
            fail(name, ln, "unknown base '" + kind + "' (expected Q, Fq <q>, Zeta <p>)");
        }
        if (is >> arg) fail(name, ln, "trailing tokens on base line");
    }

    auto [pval, pln] = kv["p"];
    long p = parse_long(name, pln, pval);
    if (p < 2) fail(name, pln, "p must be a prime >= 2");
    if (!is_prime(mpz_class(p))) fail(name, pln, "p = " + pval + " is not prime");

    auto [fval, fln] = kv["f"];
    Poly f(base);
    try {
        f = Poly::parse(base, fval);
    } catch (const MathError& e) {
        fail(name, fln, std::string("bad polynomial: ") + e.what());
    }

    std::optional<FieldElem> c0;
    if (kv.count("c0")) {
        auto [cval, cln] = kv["c0"];
        try {
            c0 = FieldElem::parse(base, cval);
        } catch (const MathError& e) {
            fail(name, cln, std::string("bad field literal: ") + e.what());
        }
    }

    return curve_make(static_cast<int>(p), f, c0);
}

CurveSpec parse_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_curve_stream(in, path);
}

GoodDivisor parse_divisor_stream(std::istream& in, const CurveSpec& curve,
                                 const std::string& name) {
    const FieldSpec& base = curve.algebra->base;
    std::vector<std::pair<DivisorComponent, int>> terms;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        char kind = t[0];
        if (kind != 'H' && kind != 'F')
            fail(name, lineno, "component must start with 'H' or 'F'");
        std::string rest = t.substr(1);
        std::vector<std::string> parts;
        size_t pos = 0;
        while (true) {
            size_t semi = rest.find(';', pos);
            if (semi == std::string::npos) {
                parts.push_back(trim(rest.substr(pos)));
                break;
            }
            parts.push_back(trim(rest.substr(pos, semi - pos)));
            pos = semi + 1;
        }
        if (parts.size() != 3)
            fail(name, lineno, "expected three ';'-separated fields");
        long mult = parse_long(name, lineno, parts[2]);
        try {
            if (kind == 'H') {
                Poly a = Poly::parse(base, parts[0]);
                Poly b = Poly::parse(base, parts[1]);
                terms.emplace_back(DivisorComponent::horizontal(a, b), static_cast<int>(mult));
            } else {
                FieldElem r = FieldElem::parse(base, parts[0]);
                Poly m = Poly::parse(base, parts[1]);
                terms.emplace_back(DivisorComponent::fiber(r, m), static_cast<int>(mult));
            }
        } catch (const MathError& e) {
            fail(name, lineno, std::string("bad component: ") + e.what());
        }
    }
    return divisor_make(curve, std::move(terms));
}

GoodDivisor parse_divisor_file(const std::string& path, const CurveSpec& curve) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_divisor_stream(in, curve, path);
}

}  // namespace cycdesc
