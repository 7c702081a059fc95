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

#ifndef CDC_SCHEME_JSON_HPP_
#define CDC_SCHEME_JSON_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "cdc/compile.hpp"

namespace cdc {

inline constexpr std::string_view kSchemeFormat = "cdc-scheme/1";

class SchemeFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON document: format tag, PDA (header plus rendered rows), placement,
// assignment, rounds -> groups -> members and derived messages, uncoded
// transmissions, and predicted loads as {"exact": "p/q", "approx": x.xxxx}.
std::string scheme_to_json(const CompiledScheme& scheme);

// Inverse of scheme_to_json. Message recipes are derived from the group
// members and are not read back. Throws SchemeFormatError.
CompiledScheme scheme_from_json(std::string_view text);

}  // namespace cdc

#endif  // CDC_SCHEME_JSON_HPP_
