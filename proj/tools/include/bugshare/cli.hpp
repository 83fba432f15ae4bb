// Copyright 2026 The bugshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef BUGSHARE_CLI_HPP_
#define BUGSHARE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace bugshare::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolations = 2;

// Runs one command. `args` excludes the program name. Results go to `out`
// (or to --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Splits "0.9, 0.8,0.26" into numbers. Throws std::invalid_argument on an
// empty list or a malformed entry.
std::vector<double> parse_profile(const std::string& text);

}  // namespace bugshare::cli

#endif  // BUGSHARE_CLI_HPP_
