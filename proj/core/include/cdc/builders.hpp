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

// Constructions of the three regular PDA families used by the cascaded
// schemes, plus two verbatim fixture arrays.

#ifndef CDC_BUILDERS_HPP_
#define CDC_BUILDERS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdc/pda.hpp"

namespace cdc {

enum class Family { kSubset, kPartition, kPartitionComplement, kFixture };

std::string_view family_name(Family family);
// Accepts "subset", "partition", "partition-complement", "fixture".
Family parse_family(std::string_view name);

// Family plus (K, t). For the partition families q = K/t and m = t-1.
struct BuilderParams {
  Family family = Family::kSubset;
  std::size_t num_nodes = 0;  // K
  std::size_t t = 0;
  std::string fixture_name;
};

// Upper bound on N*K accepted by the builders.
inline constexpr std::uint64_t kMaxBuilderEntries = std::uint64_t{1} << 28;

// Rows are t-subsets of {0..K-1} in lexicographic order; (T, k) is a star
// iff k is in T, otherwise the label is the lexicographic rank of T+{k}
// among (t+1)-subsets. Requires 1 <= t <= K-1.
Pda build_subset(std::size_t num_nodes, std::size_t t);

// Columns are (u, v) with u < q, v <= m at index v*q + u. Rows are the
// vectors a in Z_q^{m+1} with zero coordinate sum, lexicographic. (a, (u,v))
// is a star iff a_v == u; otherwise the label is the dense rank of a with
// coordinate v replaced by u. Requires q >= 2, m >= 1.
Pda build_partition(std::size_t q, std::size_t m);

// Rows are the vectors f in Z_q^{m+1} with nonzero coordinate sum. (f,(u,v))
// is a star iff f_v != u; otherwise the label is the dense rank of the
// zero-sum vector agreeing with f off coordinate v. Requires q >= 2, m >= 1.
Pda build_partition_complement(std::size_t q, std::size_t m);

// "example-6x4" (a 3-(6,4,2,4) PDA) or "example-10x5" (a 4-(10,5,3,5) PDA).
Pda fixture(std::string_view name);
std::vector<std::string> fixture_names();

// Dispatches on params.family; partition families map (K, t) to
// (q, m) = (K/t, t-1) and require t >= 2 and t | K.
Pda build(const BuilderParams& params);

// Lexicographic rank of a strictly increasing subset of {0..n-1} among all
// subsets of the same size.
std::uint64_t subset_rank(std::span<const std::size_t> subset, std::size_t n);

// Exact C(n, k) in 64 bits; throws std::overflow_error when it does not fit.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

}  // namespace cdc

#endif  // CDC_BUILDERS_HPP_
