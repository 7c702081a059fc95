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

#ifndef CDC_DIGEST_HPP_
#define CDC_DIGEST_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cdc {

using Bytes = std::vector<std::uint8_t>;

// Map function g(q, n): keyed BLAKE2b of (q, n, file) expanded in counter
// mode to `bits` bits. `bits` must be a positive multiple of 8.
Bytes map_digest(std::size_t function, std::size_t file_index, std::span<const std::uint8_t> file,
                 std::size_t bits);

// Reduce function h(q): keyed BLAKE2b over the IVAs v(q,0..N-1) in file
// order, expanded to `bits` bits.
Bytes reduce_digest(std::size_t function, std::span<const Bytes> ivas, std::size_t bits);

// SHA-256 of `data`, lowercase hex.
std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(const std::string& data);

std::string to_hex(std::span<const std::uint8_t> data);

}  // namespace cdc

#endif  // CDC_DIGEST_HPP_
