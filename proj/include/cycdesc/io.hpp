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

#ifndef CYCDESC_IO_HPP
#define CYCDESC_IO_HPP

#include <iosfwd>
#include <string>

#include "cycdesc/curve.hpp"

namespace cycdesc {

/// Line-oriented curve file:
///   p: <prime>
///   f: <poly>                 (coefficients ascending, space-separated)
///   c0: <field literal>       (optional)
///   base: Q | Fq <q> | Zeta <p>   (optional, default Q)
/// Blank lines and lines starting with '#' are ignored.  Parse errors carry
/// the offending line number.
CurveSpec parse_curve_stream(std::istream& in, const std::string& name = "<stream>");
CurveSpec parse_curve_file(const std::string& path);

/// Line-oriented divisor file, one component per line:
///   H <a-poly> ; <b-poly> ; <mult>
///   F <r> ; <m-poly> ; <mult>
/// An empty file denotes the zero divisor.
GoodDivisor parse_divisor_stream(std::istream& in, const CurveSpec& curve,
                                 const std::string& name = "<stream>");
GoodDivisor parse_divisor_file(const std::string& path, const CurveSpec& curve);

}  // namespace cycdesc

#endif
