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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cycdesc/cli.hpp"
#include "cycdesc/io.hpp"

using namespace cycdesc;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream f(p);
    f << content;
    return p.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

const char* kSexticCurve = "p: 2\nf: 1 0 1 0 1 0 1\n";

}  // namespace

TEST_CASE("curve file parsing") {
    std::istringstream in("# comment\nbase: Q\np: 2\nf: 1 0 1 0 1 0 1\n");
    CurveSpec c = parse_curve_stream(in);
    CHECK(c.algebra->p == 2);
    CHECK(c.algebra->degf == 6);
    CHECK(c.genus == 2);

    std::istringstream in2("f: 1 0 1 0 1 0 1\nbase: Fq 5\np: 2\n");
    CurveSpec c2 = parse_curve_stream(in2);  // key order is free
    CHECK(c2.algebra->base.characteristic() == 5);

    std::istringstream in3("p: 3\nf: 1 0 0 2\nc0: 2\n");
    CurveSpec c3 = parse_curve_stream(in3);
    CHECK(c3.algebra->c0.to_string() == "2");
}

TEST_CASE("curve file errors carry line numbers") {
    std::istringstream bad1("p: 2\nbase: Fq 4\nf: 1 0 1\n");
    CHECK_THROWS_WITH_AS(parse_curve_stream(bad1, "in"), doctest::Contains("in:2"),
                         ParseError);
    std::istringstream bad2("p: 2\n");
    CHECK_THROWS_AS(parse_curve_stream(bad2), ParseError);
    std::istringstream bad3("p: 2\nf: 1 0 1\nnot a kv line\n");
    CHECK_THROWS_WITH_AS(parse_curve_stream(bad3, "in"), doctest::Contains("in:3"),
                         ParseError);
    std::istringstream bad4("p: 6\nf: 1 0 1 0 1 0 1\n");
    CHECK_THROWS_AS(parse_curve_stream(bad4), ParseError);
}

TEST_CASE("divisor file parsing") {
    std::istringstream cin(kSexticCurve);
    CurveSpec c = parse_curve_stream(cin);

    std::istringstream din("H 0 -1 1 ; 1 1 ; 1\n");
    GoodDivisor D = parse_divisor_stream(din, c);
    CHECK(D.degree() == 2);

    std::istringstream din2("# both points above x = 2\nF 2 ; -85 0 1 ; 1\n");
    GoodDivisor D2 = parse_divisor_stream(din2, c);
    CHECK(D2.degree() == 2);

    std::istringstream empty("");
    CHECK(parse_divisor_stream(empty, c).degree() == 0);

    std::istringstream neg("H 0 1 ; 1 ; 1\nH 0 1 ; -1 ; -1\n");
    CHECK(parse_divisor_stream(neg, c).degree() == 0);

    std::istringstream bad("H 0 -1 1 ; 1 1\n");
    CHECK_THROWS_AS(parse_divisor_stream(bad, c), ParseError);
}

TEST_CASE("analyze command") {
    std::string curve = write_temp("cli_sextic.curve", kSexticCurve);
    RunConfig cfg;
    std::ostringstream out;
    CHECK(cmd_analyze(curve, cfg, out) == 0);
    CHECK(contains(out.str(), "genus: 2"));
    CHECK(contains(out.str(), "factors: x^2 + 1, x^4 + 1"));
    CHECK(contains(out.str(), "|mu_p(L)| = 4"));
    CHECK(contains(out.str(), "# seed: 0"));

    std::string bad = write_temp("cli_bad.curve", "p: 2\nf: 1 0 1 1\n");
    std::ostringstream out2;
    CHECK(cmd_analyze(bad, cfg, out2) == 2);
    CHECK(contains(out2.str(), "DegreeNotDivisible"));

    std::ostringstream out3;
    CHECK(cmd_analyze("/nonexistent/file.curve", cfg, out3) == 2);
}

TEST_CASE("descend command") {
    std::string curve = write_temp("cli_sextic.curve", kSexticCurve);
    std::string d1 = write_temp("cli_worked.div", "H 0 -1 1 ; 1 1 ; 1\n");
    std::string d2 = write_temp("cli_p0.div", "H 0 1 ; 1 ; 1\nH 0 1 ; -1 ; -1\n");
    std::string d0 = write_temp("cli_zero.div", "");
    RunConfig cfg;
    std::ostringstream out;
    CHECK(cmd_descend(curve, {d1, d2, d0}, cfg, out) == 0);
    std::string r = out.str();
    CHECK(contains(r, "delta = T^2 + -1*T ; n = 2"));
    CHECK(contains(r, "delta = 1 ; n = -1 ; fake: trivial ; explicit: nontrivial(cert)"));
    CHECK(contains(r, "delta = 1 ; n = 1"));
    CHECK(contains(r, "class_eq D0 D1: Distinct"));
    CHECK(contains(r, "class_eq D1 D2: Equal"));
}

TEST_CASE("verify command is deterministic and passes") {
    std::string curve = write_temp("cli_sextic.curve", kSexticCurve);
    RunConfig cfg;
    cfg.samples = 6;
    cfg.seed = 11;
    std::ostringstream a, b;
    CHECK(cmd_verify(curve, cfg, a) == 0);
    CHECK(cmd_verify(curve, cfg, b) == 0);
    CHECK(a.str() == b.str());
    CHECK(contains(a.str(), "CHECK norm_identity"));
    CHECK(contains(a.str(), "CHECK principal_identity"));
    CHECK(contains(a.str(), "CHECK weil_reciprocity"));
    CHECK(contains(a.str(), "CHECK homomorphism"));
    CHECK(!contains(a.str(), " FAIL "));

    // verify is a characteristic-zero suite; F_q curves go through oracle.
    std::string fq = write_temp("cli_fq.curve", "base: Fq 5\np: 2\nf: 1 0 1 0 1 0 1\n");
    std::ostringstream c;
    CHECK(cmd_verify(fq, cfg, c) == 2);
}

TEST_CASE("oracle command") {
    std::string curve = write_temp("cli_fq5.curve", "base: Fq 5\np: 2\nf: 1 0 1 0 1 0 1\n");
    RunConfig cfg;
    cfg.samples = 8;
    cfg.seed = 5;
    std::ostringstream out;
    CHECK(cmd_oracle(curve, cfg, out) == 0);
    std::string r = out.str();
    CHECK(contains(r, "CHECK prop31_order q5:p2 PASS (8 = 8)"));
    CHECK(contains(r, "CHECK pic0_order q5:p2 PASS"));
    CHECK(contains(r, "CHECK torsion2_order q5:p2 PASS"));
    CHECK(contains(r, "pdiv_theta_chi"));
    CHECK(contains(r, "RESULT PASS"));

    std::ostringstream b;
    CHECK(cmd_oracle(curve, cfg, b) == 0);
    CHECK(out.str() == b.str());

    // the oracle envelope rejects rational-base inputs
    std::string qcurve = write_temp("cli_sextic.curve", kSexticCurve);
    std::ostringstream c;
    CHECK(cmd_oracle(qcurve, cfg, c) == 2);
}
