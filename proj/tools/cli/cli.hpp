// Copyright 2026 The cdc-pda Authors
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

#ifndef CDC_TOOLS_CLI_CLI_HPP_
#define CDC_TOOLS_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace cdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

// Runs one `cdc` invocation. `args` excludes the program name. Returns 0 on
// success, 1 when the input fails validation (bad PDA, failed decode, bound
// violated), 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdc::cli

#endif  // CDC_TOOLS_CLI_CLI_HPP_
