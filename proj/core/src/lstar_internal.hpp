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

#ifndef CDC_SRC_LSTAR_INTERNAL_HPP_
#define CDC_SRC_LSTAR_INTERNAL_HPP_

#include <algorithm>
#include <cstdint>

#include "cdc/rational.hpp"

namespace cdc::detail {

// Sum over l of C(K-r, K-l) C(r, l-s) (l-r)/(l-1), divided by C(K, s).
// `choose(n, k)` must return C(n, k) as a BigInt (or a const reference).
template <typename Choose>
Rational l_star_sum(std::uint64_t K, std::uint64_t r, std::uint64_t s, Choose&& choose) {
  const std::uint64_t lo = std::max(r + 1, s);
  const std::uint64_t hi = std::min(r + s, K);
  mpq_class sum(0);
  for (std::uint64_t l = lo; l <= hi; ++l) {
    mpz_class weight = choose(K - r, K - l) * choose(r, l - s) * (l - r);
    mpq_class term(weight, mpz_class(l - 1));
    term.canonicalize();
    sum += term;
  }
  mpq_class out = sum / mpq_class(choose(K, s));
  out.canonicalize();
  return Rational(out.get_num(), out.get_den());
}

}  // namespace cdc::detail

#endif  // CDC_SRC_LSTAR_INTERNAL_HPP_
