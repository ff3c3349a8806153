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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cycdesc/cli.hpp"

using namespace cycdesc;

int main(int argc, char** argv) {
    CLI::App app{"explicit descent on cyclic covers y^p = f(x)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string curve_path, out_path;
    std::vector<std::string> divisor_paths;
    std::string support_csv;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("curve", curve_path, "curve file")->required();
        sub->add_option("--seed", cfg.seed, "random seed (all randomness flows from it)");
        sub->add_option("--prime-budget", cfg.prime_budget, "primes tried per membership search");
        sub->add_option("--support", support_csv, "extra support primes, comma-separated");
        sub->add_option("--samples", cfg.samples, "sample count for randomized suites");
        sub->add_option("--out", out_path, "write the report to this path instead of stdout");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "print the curve invariants");
    add_common(analyze);
    CLI::App* descend = app.add_subcommand("descend", "map divisors through the descent");
    add_common(descend);
    descend->add_option("divisors", divisor_paths, "divisor files")->required();
    CLI::App* verify = app.add_subcommand("verify", "run the identity suites over Q or Q(zeta)");
    add_common(verify);
    CLI::App* oracle = app.add_subcommand("oracle", "run the finite-field oracle end to end");
    add_common(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::istringstream sv(support_csv);
    std::string tok;
    while (std::getline(sv, tok, ',')) {
        if (!tok.empty()) cfg.support.emplace_back(tok);
    }

    std::ostringstream report;
    int code = 0;
    if (analyze->parsed()) code = cmd_analyze(curve_path, cfg, report);
    else if (descend->parsed()) code = cmd_descend(curve_path, divisor_paths, cfg, report);
    else if (verify->parsed()) code = cmd_verify(curve_path, cfg, report);
    else code = cmd_oracle(curve_path, cfg, report);

    if (out_path.empty()) {
        std::cout << report.str();
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot open output path " << out_path << "\n";
            return 2;
        }
        out << report.str();
    }
    return code;
}
