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

#include "cdc/digest.hpp"

#include <sodium.h>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string_view>

namespace cdc {

namespace {

using Key = std::array<std::uint8_t, crypto_generichash_KEYBYTES>;

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialization failed");
}

Key derive_key(std::string_view tag) {
  ensure_sodium();
  Key key{};
  crypto_generichash(key.data(), key.size(), reinterpret_cast<const unsigned char*>(tag.data()),
                     tag.size(), nullptr, 0);
  return key;
}

const Key& map_key() {
  static const Key key = derive_key("cdc-pda/map/v1");
  return key;
}

const Key& reduce_key() {
  static const Key key = derive_key("cdc-pda/reduce/v1");
  return key;
}

void put_le64(crypto_generichash_state& state, std::uint64_t value) {
  std::array<unsigned char, 8> buf{};
  for (std::size_t i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
  crypto_generichash_update(&state, buf.data(), buf.size());
}

void check_bits(std::size_t bits) {
  if (bits == 0 || bits % 8 != 0) {
    throw std::invalid_argument("digest width must be a positive multiple of 8 bits");
  }
}

// Each 64-byte output block is the prefix state extended with the block
// counter.
Bytes expand(const crypto_generichash_state& prefix, std::size_t bits) {
  const std::size_t bytes = bits / 8;
  Bytes out(bytes);
  constexpr std::size_t kBlock = crypto_generichash_BYTES_MAX;
  std::array<unsigned char, kBlock> block{};
  for (std::size_t offset = 0, counter = 0; offset < bytes; offset += kBlock, ++counter) {
    crypto_generichash_state state = prefix;
    put_le64(state, counter);
    crypto_generichash_final(&state, block.data(), block.size());
    std::size_t take = std::min(kBlock, bytes - offset);
    std::copy_n(block.begin(), take, out.begin() + static_cast<std::ptrdiff_t>(offset));
  }
  return out;
}

}  // namespace

Bytes map_digest(std::size_t function, std::size_t file_index, std::span<const std::uint8_t> file,
                 std::size_t bits) {
  check_bits(bits);
  const Key& key = map_key();
  crypto_generichash_state state;
  crypto_generichash_init(&state, key.data(), key.size(), crypto_generichash_BYTES_MAX);
  put_le64(state, function);
  put_le64(state, file_index);
  put_le64(state, file.size());
  crypto_generichash_update(&state, file.data(), file.size());
  return expand(state, bits);
}

Bytes reduce_digest(std::size_t function, std::span<const Bytes> ivas, std::size_t bits) {
  check_bits(bits);
  const Key& key = reduce_key();
  crypto_generichash_state state;
  crypto_generichash_init(&state, key.data(), key.size(), crypto_generichash_BYTES_MAX);
  put_le64(state, function);
  put_le64(state, ivas.size());
  for (const Bytes& v : ivas) {
    put_le64(state, v.size());
    crypto_generichash_update(&state, v.data(), v.size());
  }
  return expand(state, bits);
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  ensure_sodium();
  std::array<unsigned char, crypto_hash_sha256_BYTES> out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return to_hex(out);
}

std::string sha256_hex(const std::string& data) {
  return sha256_hex(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

}  // namespace cdc
