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

#include "cdc/analysis.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "cdc/builders.hpp"
#include "cdc/compile.hpp"
#include "oracles.hpp"

namespace cdc {
namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

Rational from_mpq(const mpq_class& x) { return Rational(BigInt(x.get_num()), BigInt(x.get_den())); }

// min(s/r (1 - r/K), 1) written out by hand.
Rational naive_l1(long K, long r, long s) {
  Rational v = R(s * (K - r), r * K);
  return v > R(1) ? R(1) : v;
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(16, 8), 12870);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(100, 50), oracle::choose(100, 50));
}

TEST(LStar, ReferenceValues) {
  EXPECT_EQ(l_star(16, 3, 1), R(13, 48));
  EXPECT_EQ(l_star(16, 5, 5).decimal(4), "0.4540");
  EXPECT_EQ(l_star(16, 16, 3), R(0));
  EXPECT_THROW(l_star(16, 0, 1), std::invalid_argument);
  EXPECT_THROW(l_star(16, 3, 17), std::invalid_argument);
}

TEST(LStar, MatchesBinomialFormUpToTwenty) {
  for (long K = 1; K <= 20; ++K) {
    for (long r = 1; r <= K; ++r) {
      for (long s = 1; s <= K; ++s) {
        ASSERT_EQ(l_star(static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(r),
                         static_cast<std::uint64_t>(s)),
                  from_mpq(oracle::li_load(K, r, s)))
            << K << " " << r << " " << s;
      }
    }
  }
}

TEST(LStar, SingleReplicaClosedForm) {
  for (std::int64_t K = 2; K <= 30; ++K) {
    for (std::int64_t r = 1; r < K; ++r) {
      EXPECT_EQ(l_star(static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(r), 1), R(K - r, r * K));
    }
  }
}

TEST(LStar, FullReplicationNeedsOneMoreNode) {
  // With s = K each missing IVA is wanted by all K nodes.
  for (std::int64_t K = 2; K <= 20; ++K) {
    for (std::int64_t r = 1; r < K; ++r) {
      const Rational v = l_star(static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(K));
      EXPECT_EQ(v, R(K - r, K - 1));
    }
  }
}

TEST(SchemeLoads, ReferenceValues) {
  EXPECT_EQ(l_scheme1(16, 3, 2), R(13, 24));
  EXPECT_EQ(l_scheme1(16, 8, 10), R(5, 8));
  EXPECT_EQ(l_scheme1(4, 1, 4), R(1));
  EXPECT_EQ(l_scheme23(16, 4, 2), R(1, 2));
  EXPECT_EQ(l_scheme23(6, 3, 4), R(1));
  EXPECT_THROW(l_scheme23(16, 1, 2), std::invalid_argument);
  EXPECT_EQ(h_ratio(16, 3, 3, SchemeId::k1).decimal(4), "1.5086");
  EXPECT_EQ(h_ratio(16, 5, 7, SchemeId::k1).decimal(4), "1.7804");
  EXPECT_EQ(h_ratio(16, 3, 1, SchemeId::k1), R(1));
  EXPECT_THROW(h_ratio(16, 16, 1, SchemeId::k1), std::domain_error);
}

TEST(SchemeLoads, Scheme1AgainstHandFormula) {
  for (long K = 1; K <= 25; ++K) {
    for (long r = 1; r <= K; ++r) {
      for (long s = 1; s <= K; ++s) {
        EXPECT_EQ(scheme_load(SchemeId::k1, static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(r),
                              static_cast<std::uint64_t>(s)),
                  naive_l1(K, r, s));
      }
    }
  }
}

// The closed form agrees with what the compiler predicts for the subset
// family, capped at 1.
TEST(SchemeLoads, Scheme1MatchesCompiledSubsetScheme) {
  for (std::size_t K = 3; K <= 8; ++K) {
    for (std::size_t t = 1; t < K; ++t) {
      for (std::size_t s = 1; s <= K; ++s) {
        const auto scheme = compile(build_subset(K, t), window_assignment(K, s));
        EXPECT_EQ(min(*scheme.predicted.communication, R(1)), l_scheme1(K, t, s));
      }
    }
  }
}

TEST(SchemeLoads, Scheme2And3MatchCompiledPartitionSchemes) {
  for (std::size_t q = 2; q <= 4; ++q) {
    for (std::size_t m = 1; (m + 1) * q <= 12; ++m) {
      const std::size_t K = q * (m + 1), t = m + 1;
      for (std::size_t s = 1; s <= K; ++s) {
        const auto a = compile(build_partition(q, m), window_assignment(K, s));
        EXPECT_EQ(a.predicted.computation, R(static_cast<std::int64_t>(t)));
        const auto b = compile(build_partition_complement(q, m), window_assignment(K, s));
        EXPECT_EQ(b.predicted.computation, R(static_cast<std::int64_t>(K - t)));
        if (K >= 5) {
          ASSERT_TRUE(admissible(SchemeId::k2, K, t, s));
          ASSERT_TRUE(admissible(SchemeId::k3, K, K - t, s));
          EXPECT_EQ(min(*a.predicted.communication, R(1)), scheme_load(SchemeId::k2, K, t, s));
          EXPECT_EQ(min(*b.predicted.communication, R(1)), scheme_load(SchemeId::k3, K, K - t, s));
        }
      }
    }
  }
}

TEST(Admissible, Ranges) {
  EXPECT_TRUE(admissible(SchemeId::k1, 2, 1, 2));
  EXPECT_FALSE(admissible(SchemeId::k1, 2, 3, 1));
  EXPECT_TRUE(admissible(SchemeId::k2, 6, 3, 1));
  EXPECT_FALSE(admissible(SchemeId::k2, 6, 4, 1));
  EXPECT_FALSE(admissible(SchemeId::k2, 4, 2, 1));
  EXPECT_FALSE(admissible(SchemeId::k2, 6, 1, 1));
  EXPECT_TRUE(admissible(SchemeId::k3, 6, 4, 1));
  EXPECT_TRUE(admissible(SchemeId::k3, 6, 3, 1));
  EXPECT_FALSE(admissible(SchemeId::k3, 6, 5, 1));
  EXPECT_FALSE(admissible(SchemeId::k3, 7, 4, 1));
  EXPECT_EQ(parse_scheme("2"), SchemeId::k2);
  EXPECT_THROW(parse_scheme("4"), std::invalid_argument);
}

TEST(LoadPoint, RatioTableRow) {
  const auto pairs = ratio_table_pairs();
  ASSERT_EQ(pairs.size(), 9u);
  EXPECT_EQ(pairs.front(), (std::pair<std::uint64_t, std::uint64_t>{3, 1}));
  EXPECT_EQ(pairs.back(), (std::pair<std::uint64_t, std::uint64_t>{8, 10}));
  const LoadPoint p = load_point(16, 8, 8);
  EXPECT_EQ(p.l1, R(1, 2));
  ASSERT_TRUE(p.l2 && p.h2);
  EXPECT_EQ(*p.l2, R(4, 7));
  ASSERT_TRUE(p.l3.has_value());
  EXPECT_EQ(*p.l3, *p.l2);
  EXPECT_FALSE(load_point(16, 5, 5).l3.has_value());
  EXPECT_EQ(p.h1->decimal(4), "1.3971");
  const LoadPoint full = load_point(16, 16, 1);
  EXPECT_FALSE(full.h1.has_value());
}

// Brute-force maximum of H1 over all triples, using only oracle formulas.
TEST(Scan, Scheme1AgainstBruteForce) {
  const long k_max = 14;
  Rational best = R(0);
  ScanPoint where;
  std::uint64_t evaluated = 0, skipped = 0;
  for (long K = 2; K <= k_max; ++K) {
    for (long r = 1; r <= K; ++r) {
      for (long s = 1; s <= K; ++s) {
        const mpq_class ls = oracle::li_load(K, r, s);
        if (ls == 0) {
          ++skipped;
          continue;
        }
        ++evaluated;
        const Rational h = naive_l1(K, r, s) / from_mpq(ls);
        if (h > best) {
          best = h;
          where = {static_cast<std::uint64_t>(K), static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(s), h};
        }
      }
    }
  }
  const ScanResult res = scan_h(k_max, SchemeId::k1, R(2));
  EXPECT_EQ(res.evaluated, evaluated);
  EXPECT_EQ(res.skipped, skipped);
  EXPECT_TRUE(res.violations.empty());
  ASSERT_TRUE(res.worst);
  EXPECT_EQ(res.worst->h, best);
  EXPECT_EQ(res.worst->K, where.K);
  EXPECT_EQ(res.per_k.size(), static_cast<std::size_t>(k_max - 1));
}

TEST(Scan, TightBoundReportsViolationsInOrder) {
  const ScanResult res = scan_h(10, SchemeId::k1, R(3, 2));
  ASSERT_FALSE(res.violations.empty());
  for (std::size_t i = 1; i < res.violations.size(); ++i) {
    const auto& a = res.violations[i - 1];
    const auto& b = res.violations[i];
    EXPECT_LT(std::tie(a.K, a.r, a.s), std::tie(b.K, b.r, b.s));
  }
  for (const auto& v : res.violations) EXPECT_GT(v.h, R(3, 2));
}

TEST(Scan, FastModeAgreesWithExact) {
  for (SchemeId id : {SchemeId::k1, SchemeId::k2, SchemeId::k3}) {
    ScanOptions fast;
    fast.fast = true;
    const Rational bound = id == SchemeId::k1 ? R(19, 10) : R(2);
    const ScanResult a = scan_h(40, id, bound);
    const ScanResult b = scan_h(40, id, bound, fast);
    EXPECT_EQ(a.evaluated, b.evaluated);
    EXPECT_EQ(a.skipped, b.skipped);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.per_k, b.per_k);
    EXPECT_LT(b.exact_checks, b.evaluated);
  }
}

TEST(Scan, ThreadCountDoesNotMatter) {
  ScanOptions one, three;
  one.threads = 1;
  three.threads = 3;
  const ScanResult a = scan_h(25, SchemeId::k1, R(2), one);
  const ScanResult b = scan_h(25, SchemeId::k1, R(2), three);
  EXPECT_EQ(a.per_k, b.per_k);
  EXPECT_EQ(a.worst, b.worst);
}

TEST(Scan, Schemes2And3KnownMaxima) {
  const ScanResult two = scan_h(20, SchemeId::k2, R(21, 10));
  ASSERT_TRUE(two.worst);
  EXPECT_EQ(*two.worst, (ScanPoint{9, 3, 3, R(56, 27)}));
  EXPECT_TRUE(two.violations.empty());
  const ScanResult three = scan_h(20, SchemeId::k3, R(21, 10));
  ASSERT_TRUE(three.worst);
  EXPECT_EQ(*three.worst, (ScanPoint{6, 3, 4, R(150, 73)}));
  EXPECT_TRUE(three.violations.empty());
  EXPECT_THROW(scan_h(1, SchemeId::k1, R(2)), std::invalid_argument);
}

TEST(Thresholds, Values) {
  EXPECT_EQ(lemma4_threshold(2, 2), R(39, 2));
  EXPECT_EQ(lemma4_threshold(8, 8), R(1176));
  EXPECT_EQ(theorem4_threshold(4, 2), R(606, 13));
  EXPECT_EQ(theorem4_threshold(4, 2).decimal(2), "46.62");
  EXPECT_THROW(lemma4_threshold(2, 3), std::invalid_argument);
  EXPECT_THROW(theorem4_threshold(4, 3), std::invalid_argument);
}

TEST(Thresholds, AgainstHandArithmetic) {
  for (std::int64_t r = 1; r <= 12; ++r) {
    for (std::int64_t s = 1; s <= r; ++s) {
      EXPECT_EQ(lemma4_threshold(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(s)),
                R(3 * r * s * (7 * r - s + 1), 8 * (r - s + 1)));
      if (r >= s + 2) {
        EXPECT_EQ(theorem4_threshold(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(s)),
                  R((111 * r - 15 * s - 111) * r * s, 44 * r - 40 * s - 44));
      }
    }
  }
}

TEST(Thresholds, SampledRatiosStayBelowBound) {
  const ThresholdCheck a = check_threshold(SchemeId::k1, 2, 2, 5);
  EXPECT_TRUE(a.holds());
  EXPECT_EQ(a.sampled, (std::vector<std::uint64_t>{20, 21, 22, 23, 24}));
  const ThresholdCheck b = check_threshold(SchemeId::k2, 4, 2, 3);
  EXPECT_TRUE(b.holds());
  EXPECT_EQ(b.sampled, (std::vector<std::uint64_t>{48, 52, 56}));
  const ThresholdCheck c = check_threshold(SchemeId::k3, 6, 2, 3);
  // (K - r) | K forces K <= 2r, far below the threshold of 45.
  EXPECT_EQ(theorem4_threshold(6, 2), R(45));
  EXPECT_TRUE(c.sampled.empty());
  EXPECT_TRUE(c.holds());
}

TEST(FileCounts, FunctionCountRows) {
  struct Row {
    std::uint64_t K, s;
    long q_li, q1;
  };
  const std::vector<Row> halves{{2, 1, 2, 2},     {4, 2, 6, 2},      {6, 3, 20, 2},     {8, 4, 70, 2},
                                {10, 5, 252, 2},  {12, 6, 924, 2},   {14, 7, 3432, 2},  {16, 8, 12870, 2},
                                {18, 9, 48620, 2}, {20, 10, 184756, 2}};
  const std::vector<Row> thirds{{3, 1, 3, 3},   {6, 2, 15, 3},    {9, 3, 84, 3},
                                {12, 4, 495, 3}, {15, 5, 3003, 3}, {18, 6, 18564, 3}};
  for (const auto& rows : {halves, thirds}) {
    for (const Row& row : rows) {
      const auto c = q_file_comparison(row.K, 1, row.s);
      EXPECT_EQ(c.q_li, row.q_li) << row.K;
      EXPECT_EQ(c.q_new, row.q1) << row.K;
    }
  }
  struct Triple {
    std::uint64_t K, r, s;
    long q_li, q1;
  };
  for (const Triple& t : std::vector<Triple>{{16, 3, 2, 120, 8},
                                             {16, 5, 4, 1820, 4},
                                             {16, 8, 6, 8008, 8},
                                             {20, 3, 2, 190, 10},
                                             {20, 5, 4, 4845, 5},
                                             {20, 8, 6, 38760, 10}}) {
    const auto c = q_file_comparison(t.K, t.r, t.s);
    EXPECT_EQ(c.q_li, t.q_li);
    EXPECT_EQ(c.q_new, t.q1);
    EXPECT_EQ(c.n_li, oracle::choose(static_cast<long>(t.K), static_cast<long>(t.r)));
  }
}

TEST(FileCounts, FamilySizesMatchBuilders) {
  const auto c = q_file_comparison(12, 3, 2);
  ASSERT_TRUE(c.n_scheme2);
  EXPECT_EQ(*c.n_scheme2, static_cast<unsigned long>(build_partition(4, 2).num_files()));
  const auto d = q_file_comparison(12, 9, 2);
  ASSERT_TRUE(d.n_scheme3);
  EXPECT_EQ(*d.n_scheme3, static_cast<unsigned long>(build_partition_complement(4, 2).num_files()));
  EXPECT_FALSE(q_file_comparison(12, 5, 2).n_scheme2);
}

TEST(SymPoly, AgainstExplicitSums) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<std::uint64_t> a(n);
    for (auto& x : a) x = 1 + rng() % 20;
    const std::uint64_t sum = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const std::uint64_t K = sum + 1 + rng() % 30;
    const SymPolyVerdict v = sym_poly_check(a, K);
    EXPECT_TRUE(v.routes_agree);
    ASSERT_EQ(v.b.size(), n + 1);
    for (std::size_t h = 0; h <= n; ++h) EXPECT_EQ(v.b[h], oracle::esym(a, h));
    EXPECT_TRUE(v.holds());
    for (const auto& p : v.part2) EXPECT_TRUE(p.has_value());
  }
}

TEST(SymPoly, SmallKLeavesPart2Unchecked) {
  const std::vector<std::uint64_t> a{5, 5, 5};
  const SymPolyVerdict v = sym_poly_check(a, 6);
  EXPECT_FALSE(v.part2[0].has_value());
  EXPECT_TRUE(v.part2[2].has_value());
  EXPECT_TRUE(v.holds());
  EXPECT_THROW(sym_poly_check(std::vector<std::uint64_t>{}, 3), std::invalid_argument);
  EXPECT_THROW(sym_poly_check(std::vector<std::uint64_t>{0, 1}, 3), std::invalid_argument);
  EXPECT_THROW(sym_poly_check(a, 5), std::invalid_argument);
}

}  // namespace
}  // namespace cdc
