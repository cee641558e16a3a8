// Copyright 2026 the qleak authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLEAK_CLI_HPP
#define QLEAK_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qleak {

/// Runs one CLI invocation (args exclude the program name). Exit codes:
/// 0 success, 2 input error, 3 budget or solver failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qleak

#endif  // QLEAK_CLI_HPP
