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

#ifndef CYCDESC_CLI_HPP
#define CYCDESC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cycdesc {

/// Shared knobs for all subcommands.  All randomness flows from `seed`, so
/// identical (inputs, seed, budgets) produce byte-identical reports.
struct RunConfig {
    std::uint64_t seed = 0;
    int prime_budget = 20;
    std::vector<mpz_class> support;  // extra primes for class searches
    int samples = 100;
};

/// Each command writes a plain-text report to `out` and returns the process
/// exit code: 0 all checks pass, 1 some check failed, 2 input/envelope error.
int cmd_analyze(const std::string& curve_path, const RunConfig& cfg, std::ostream& out);
int cmd_descend(const std::string& curve_path, const std::vector<std::string>& divisor_paths,
                const RunConfig& cfg, std::ostream& out);
int cmd_verify(const std::string& curve_path, const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const std::string& curve_path, const RunConfig& cfg, std::ostream& out);

}  // namespace cycdesc

#endif
