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

#include "cdc/builders.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace cdc {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kSubset:
      return "subset";
    case Family::kPartition:
      return "partition";
    case Family::kPartitionComplement:
      return "partition-complement";
    case Family::kFixture:
      return "fixture";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::kSubset, Family::kPartition, Family::kPartitionComplement,
                   Family::kFixture}) {
    if (family_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown PDA family '" + std::string(name) + "'");
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) / i is exact at every step. With g = gcd(result, i),
    // i/g and result/g are coprime, so i/g divides n-k+i.
    std::uint64_t num = n - k + i;
    std::uint64_t g = std::gcd(result, i);
    std::uint64_t r = result / g;
    std::uint64_t d = i / g;
    num /= d;
    if (r > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error("binomial coefficient exceeds 64 bits");
    }
    result = r * num;
  }
  return result;
}

std::uint64_t subset_rank(std::span<const std::size_t> subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::uint64_t rank = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (subset[i] >= n || subset[i] < next) {
      throw std::invalid_argument("subset_rank: subset not strictly increasing within range");
    }
    for (std::size_t j = next; j < subset[i]; ++j) {
      rank += binomial_u64(n - 1 - j, k - 1 - i);
    }
    next = subset[i] + 1;
  }
  return rank;
}

namespace {

void check_size(std::uint64_t rows, std::uint64_t cols) {
  if (rows == 0 || cols == 0 || rows > kMaxBuilderEntries / cols) {
    throw std::invalid_argument("requested PDA is too large to build");
  }
}

// Advances a strictly increasing k-subset of {0..n-1} to its lexicographic
// successor. Returns false after the last one.
bool next_subset(std::vector<std::size_t>& subset, std::size_t n) {
  const std::size_t k = subset.size();
  std::size_t i = k;
  while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
  if (i == 0) return false;
  ++subset[i - 1];
  for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  return true;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > kMaxBuilderEntries / base) throw std::invalid_argument("requested PDA is too large");
    out *= base;
  }
  return out;
}

// Vectors over Z_q of length m+1, addressed by their lexicographic index
// sum_i a_i q^(m-i). Splits the space into zero-sum and nonzero-sum vectors
// and assigns each a dense rank within its class.
struct HypercubeIndex {
  std::size_t q;
  std::size_t len;
  std::uint64_t size;
  std::vector<std::uint64_t> dense_rank;  // rank within its class
  std::vector<std::uint64_t> zero_sum;    // lexicographic indices, ascending
  std::vector<std::uint64_t> nonzero_sum;

  HypercubeIndex(std::size_t q_, std::size_t m)
      : q(q_), len(m + 1), size(checked_pow(q_, m + 1)), dense_rank(size) {
    std::vector<std::size_t> digits(len, 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      std::size_t sum = 0;
      for (std::size_t d : digits) sum += d;
      if (sum % q == 0) {
        dense_rank[idx] = zero_sum.size();
        zero_sum.push_back(idx);
      } else {
        dense_rank[idx] = nonzero_sum.size();
        nonzero_sum.push_back(idx);
      }
      for (std::size_t i = len; i-- > 0;) {
        if (++digits[i] < q) break;
        digits[i] = 0;
      }
    }
  }

  std::vector<std::size_t> digits_of(std::uint64_t idx) const {
    std::vector<std::size_t> out(len);
    for (std::size_t i = len; i-- > 0;) {
      out[i] = static_cast<std::size_t>(idx % q);
      idx /= q;
    }
    return out;
  }

  std::uint64_t index_of(const std::vector<std::size_t>& digits) const {
    std::uint64_t idx = 0;
    for (std::size_t d : digits) idx = idx * q + d;
    return idx;
  }
};

void check_partition_params(std::size_t q, std::size_t m) {
  if (q < 2) throw std::invalid_argument("partition families need q >= 2");
  if (m < 1) throw std::invalid_argument("partition families need m >= 1");
}

}  // namespace

Pda build_subset(std::size_t num_nodes, std::size_t t) {
  const std::size_t K = num_nodes;
  if (t < 1 || K < 2 || t > K - 1) {
    throw std::invalid_argument("subset family needs 1 <= t <= K-1");
  }
  const std::uint64_t N = binomial_u64(K, t);
  check_size(N, K);
  const std::uint64_t Z = binomial_u64(K - 1, t - 1);
  const std::uint64_t S = binomial_u64(K, t + 1);

  std::vector<PdaEntry> grid;
  grid.reserve(N * K);
  std::vector<std::size_t> rows(t);
  for (std::size_t i = 0; i < t; ++i) rows[i] = i;
  std::vector<std::size_t> merged(t + 1);
  do {
    for (std::size_t k = 0; k < K; ++k) {
      if (std::binary_search(rows.begin(), rows.end(), k)) {
        grid.push_back(PdaEntry::star());
        continue;
      }
      auto pos = std::lower_bound(rows.begin(), rows.end(), k);
      auto out = std::copy(rows.begin(), pos, merged.begin());
      *out++ = k;
      std::copy(pos, rows.end(), out);
      grid.push_back(PdaEntry::code(static_cast<Label>(subset_rank(merged, K))));
    }
  } while (next_subset(rows, K));
  return Pda(K, N, Z, S, std::move(grid));
}

Pda build_partition(std::size_t q, std::size_t m) {
  check_partition_params(q, m);
  const std::size_t K = q * (m + 1);
  HypercubeIndex cube(q, m);
  const std::uint64_t N = cube.zero_sum.size();
  check_size(N, K);
  const std::uint64_t Z = N / q;

  std::vector<PdaEntry> grid;
  grid.reserve(N * K);
  for (std::uint64_t row_idx : cube.zero_sum) {
    auto a = cube.digits_of(row_idx);
    for (std::size_t v = 0; v <= m; ++v) {
      for (std::size_t u = 0; u < q; ++u) {
        if (a[v] == u) {
          grid.push_back(PdaEntry::star());
          continue;
        }
        auto f = a;
        f[v] = u;
        grid.push_back(PdaEntry::code(static_cast<Label>(cube.dense_rank[cube.index_of(f)])));
      }
    }
  }
  return Pda(K, N, Z, cube.nonzero_sum.size(), std::move(grid));
}

Pda build_partition_complement(std::size_t q, std::size_t m) {
  check_partition_params(q, m);
  const std::size_t K = q * (m + 1);
  HypercubeIndex cube(q, m);
  const std::uint64_t N = cube.nonzero_sum.size();
  check_size(N, K);
  // Stars in column (u, v): rows f with f_v != u; (q-1)^2 q^(m-1) of them.
  const std::uint64_t Z = (q - 1) * (q - 1) * (cube.zero_sum.size() / q);

  std::vector<PdaEntry> grid;
  grid.reserve(N * K);
  for (std::uint64_t row_idx : cube.nonzero_sum) {
    auto f = cube.digits_of(row_idx);
    for (std::size_t v = 0; v <= m; ++v) {
      for (std::size_t u = 0; u < q; ++u) {
        if (f[v] != u) {
          grid.push_back(PdaEntry::star());
          continue;
        }
        auto a = f;
        std::size_t rest = 0;
        for (std::size_t i = 0; i <= m; ++i) {
          if (i != v) rest += f[i];
        }
        a[v] = (q - rest % q) % q;
        grid.push_back(PdaEntry::code(static_cast<Label>(cube.dense_rank[cube.index_of(a)])));
      }
    }
  }
  return Pda(K, N, Z, cube.zero_sum.size(), std::move(grid));
}

namespace {

constexpr int kStar = -1;

Pda from_rows(std::size_t K, std::size_t Z, std::size_t S,
              std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<PdaEntry> grid;
  for (const auto& row : rows) {
    for (int v : row) grid.push_back(v == kStar ? PdaEntry::star() : PdaEntry::code(Label(v)));
  }
  return Pda(K, rows.size(), Z, S, std::move(grid));
}

}  // namespace

Pda fixture(std::string_view name) {
  constexpr int x = kStar;
  if (name == "example-6x4") {
    return from_rows(6, 2, 4,
                     {{x, x, 0, x, 1, 2},
                      {x, 0, x, 1, x, 3},
                      {0, x, x, 2, 3, x},
                      {1, 2, 3, x, x, x}});
  }
  if (name == "example-10x5") {
    return from_rows(10, 3, 5,
                     {{x, x, x, x, x, x, 0, 1, 2, 3},
                      {x, x, x, 0, 1, 2, x, x, x, 4},
                      {x, 0, 1, x, x, 3, x, x, 4, x},
                      {0, x, 2, x, 3, x, x, 4, x, x},
                      {1, 2, x, 3, x, x, 4, x, x, x}});
  }
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() { return {"example-6x4", "example-10x5"}; }

Pda build(const BuilderParams& params) {
  const std::size_t K = params.num_nodes;
  const std::size_t t = params.t;
  switch (params.family) {
    case Family::kSubset:
      return build_subset(K, t);
    case Family::kPartition:
    case Family::kPartitionComplement:
      if (t < 2 || K == 0 || K % t != 0 || K / t < 2) {
        throw std::invalid_argument("partition families need t >= 2, t | K and K/t >= 2");
      }
      return params.family == Family::kPartition ? build_partition(K / t, t - 1)
                                                 : build_partition_complement(K / t, t - 1);
    case Family::kFixture:
      return fixture(params.fixture_name);
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace cdc
