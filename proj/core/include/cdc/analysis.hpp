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

// Closed-form loads of the cascaded CDC schemes and of the optimal
// computation-communication trade-off, all in exact rational arithmetic.

#ifndef CDC_ANALYSIS_HPP_
#define CDC_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdc/rational.hpp"

namespace cdc {

// C(n, k), 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

// Optimal load L*(r, s) for K nodes. Requires 1 <= r, s <= K; throws
// std::invalid_argument otherwise.
Rational l_star(std::uint64_t K, std::uint64_t r, std::uint64_t s);

// min(s/r * (1 - r/K), 1).
Rational l_scheme1(std::uint64_t K, std::uint64_t r, std::uint64_t s);

// min(s/(r-1) * (1 - r/K), 1); r >= 2.
Rational l_scheme23(std::uint64_t K, std::uint64_t r, std::uint64_t s);

enum class SchemeId { k1 = 1, k2 = 2, k3 = 3 };

// Parses "1", "2" or "3". Throws std::invalid_argument.
SchemeId parse_scheme(std::string_view text);

// Parameter ranges a scheme's PDA family exists for. Scheme 1 needs
// 1 <= r, s <= K; scheme 2 needs K >= 5, r >= 2 and r | K; scheme 3 needs
// K >= 5, r <= K-2 and (K-r) | K.
bool admissible(SchemeId scheme, std::uint64_t K, std::uint64_t r, std::uint64_t s);

// The scheme's capped load; schemes 2 and 3 share one formula.
Rational scheme_load(SchemeId scheme, std::uint64_t K, std::uint64_t r, std::uint64_t s);

// L_i / L*. Throws std::domain_error when L* = 0 (r = K).
Rational h_ratio(std::uint64_t K, std::uint64_t r, std::uint64_t s, SchemeId scheme);

struct LoadPoint {
  std::uint64_t K = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  Rational l_star;
  Rational l1;
  // Set when the scheme is admissible at (K, r, s).
  std::optional<Rational> l2;
  std::optional<Rational> l3;
  // Set when L* > 0 and the load is.
  std::optional<Rational> h1;
  std::optional<Rational> h2;
  std::optional<Rational> h3;
};

LoadPoint load_point(std::uint64_t K, std::uint64_t r, std::uint64_t s);

// The nine (r, s) pairs of the K = 16 ratio table.
std::vector<std::pair<std::uint64_t, std::uint64_t>> ratio_table_pairs();

struct ScanPoint {
  std::uint64_t K = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  Rational h;
  friend bool operator==(const ScanPoint&, const ScanPoint&) = default;
};

struct ScanOptions {
  // 0 selects default_thread_count().
  std::size_t threads = 0;
  // Evaluate L* in floating point and recheck exactly only the points that
  // come within `recheck_margin` (relative) of the bound, plus each K's
  // worst point. Intended for Kmax in the hundreds.
  bool fast = false;
  double recheck_margin = 1e-6;
};

struct ScanResult {
  SchemeId scheme = SchemeId::k1;
  std::uint64_t k_max = 0;
  Rational bound;
  // Triples for which a ratio was evaluated.
  std::uint64_t evaluated = 0;
  // Admissible triples skipped because L* = 0.
  std::uint64_t skipped = 0;
  // Exactly rechecked triples in fast mode; equals `evaluated` otherwise.
  std::uint64_t exact_checks = 0;
  std::optional<ScanPoint> worst;
  // Triples with H > bound, ascending (K, r, s).
  std::vector<ScanPoint> violations;
  // Largest ratio per K, ascending K; K without admissible triples omitted.
  std::vector<ScanPoint> per_k;
};

// Every admissible (K, r, s) with 2 <= K <= k_max (K >= 5 for schemes 2
// and 3). Deterministic for any thread count. Throws std::invalid_argument
// if k_max < 2.
ScanResult scan_h(std::uint64_t k_max, SchemeId scheme, const Rational& bound,
                  const ScanOptions& options = {});

// 3rs(7r-s+1) / (8(r-s+1)); requires r >= s >= 1.
Rational lemma4_threshold(std::uint64_t r, std::uint64_t s);

// (111r-15s-111)rs / (44r-40s-44); requires r >= s+2, s >= 1.
Rational theorem4_threshold(std::uint64_t r, std::uint64_t s);

struct ThresholdCheck {
  Rational threshold;
  // K values evaluated, ascending, each >= threshold.
  std::vector<std::uint64_t> sampled;
  std::vector<ScanPoint> violations;
  bool holds() const { return violations.empty(); }
};

// Evaluates H for the first `samples` values of K at or above the threshold
// for which the scheme is admissible. Scheme 1 uses lemma4_threshold with
// bound 2; schemes 2 and 3 use theorem4_threshold with bound 21/10.
ThresholdCheck check_threshold(SchemeId scheme, std::uint64_t r, std::uint64_t s,
                               std::size_t samples);

struct FileComparison {
  std::uint64_t K = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  // C(K, s).
  BigInt q_li;
  // K / gcd(K, s).
  BigInt q_new;
  // C(K, r); also the file count of scheme 1.
  BigInt n_li;
  // (K/r)^(r-1), when r >= 2 divides K.
  std::optional<BigInt> n_scheme2;
  // (K/t - 1)(K/t)^(t-1) with t = K - r, when t >= 2 divides K.
  std::optional<BigInt> n_scheme3;
};

// Requires 1 <= r, s <= K.
FileComparison q_file_comparison(std::uint64_t K, std::uint64_t r, std::uint64_t s);

struct SymPolyVerdict {
  // b[h], h = 0..n: elementary symmetric sums, b[0] = 1.
  std::vector<BigInt> b;
  // The subset-enumeration and product-expansion routes agreed.
  bool routes_agree = true;
  // part1[h], h = 0..n-1: b[h+1] <= sum(a)/(h+1) * b[h].
  std::vector<bool> part1;
  // part2[h] is empty when K < sum(a)/(h+1), otherwise
  // b[h+1] K^(n-h-1) <= b[h] K^(n-h).
  std::vector<std::optional<bool>> part2;
  bool holds() const;
};

// Requires a non-empty list of positive integers, n <= 20 for the subset
// route, and K > max(a). Throws std::invalid_argument.
SymPolyVerdict sym_poly_check(std::span<const std::uint64_t> a, std::uint64_t K);

}  // namespace cdc

#endif  // CDC_ANALYSIS_HPP_
