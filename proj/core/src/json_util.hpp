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

#ifndef CDC_SRC_JSON_UTIL_HPP_
#define CDC_SRC_JSON_UTIL_HPP_

#include <json.hpp>

#include "cdc/rational.hpp"

namespace cdc::detail {

// Ordered keys keep documents byte-stable and readable.
using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& value) {
  return Json{{"exact", value.str()}, {"approx", value.approx(4)}};
}

inline Rational rational_from_json(const Json& node) {
  return Rational::parse(node.at("exact").get<std::string>());
}

}  // namespace cdc::detail

#endif  // CDC_SRC_JSON_UTIL_HPP_
