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

#include "cdc/compile.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <set>

#include "cdc/builders.hpp"

namespace cdc {
namespace {

Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

TEST(Placement, ExampleOne) {
  const auto w = placement_from_pda(fixture("example-6x4"));
  const std::vector<FileSet> expected{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  EXPECT_EQ(w, expected);
}

TEST(Placement, ExampleThree) {
  const auto w = placement_from_pda(fixture("example-10x5"));
  const std::vector<FileSet> expected{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                                      {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}};
  EXPECT_EQ(w, expected);
}

TEST(Placement, AllStarColumnStoresEverything) {
  const Pda p(2, 2, 2, 0, {PdaEntry::star(), PdaEntry::star(), PdaEntry::star(), PdaEntry::star()});
  EXPECT_EQ(placement_from_pda(p)[1], (FileSet{0, 1}));
}

TEST(Window, TenFour) {
  const auto a = window_assignment(10, 4);
  EXPECT_EQ(a.num_functions, 5u);
  EXPECT_EQ(a.per_node, 2u);
  EXPECT_EQ(a.node_functions[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(a.node_functions[2], (std::vector<std::size_t>{4, 0}));
  EXPECT_EQ(a.node_functions[9], (std::vector<std::size_t>{3, 4}));
}

TEST(Window, FullReplication) {
  const auto a = window_assignment(7, 7);
  EXPECT_EQ(a.num_functions, 1u);
  EXPECT_EQ(a.per_node, 1u);
  for (const auto& list : a.node_functions) EXPECT_EQ(list, (std::vector<std::size_t>{0}));
}

TEST(Window, NoReplication) {
  const auto a = window_assignment(6, 1);
  EXPECT_EQ(a.num_functions, 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(a.node_functions[k], (std::vector<std::size_t>{k}));
}

TEST(Window, Ranges) {
  EXPECT_THROW(window_assignment(6, 0), std::invalid_argument);
  EXPECT_THROW(window_assignment(6, 7), std::invalid_argument);
}

// Each function is reduced by exactly s nodes, and Q, e follow the gcd rule.
TEST(Window, ColumnSums) {
  for (std::size_t K = 1; K <= 24; ++K) {
    for (std::size_t s = 1; s <= K; ++s) {
      const auto a = window_assignment(K, s);
      EXPECT_EQ(a.num_functions, K / std::gcd(K, s));
      EXPECT_EQ(a.per_node, s / std::gcd(K, s));
      std::vector<std::size_t> count(a.num_functions, 0);
      for (const auto& list : a.node_functions) {
        for (std::size_t q : list) ++count[q];
      }
      for (std::size_t c : count) EXPECT_EQ(c, s);
    }
  }
}

TEST(Custom, InfersQ) {
  const auto a = custom_assignment({0, 0, 1, 0, 0, 1});
  EXPECT_EQ(a.num_functions, 2u);
  EXPECT_EQ(a.per_node, 1u);
  EXPECT_FALSE(a.is_window());
  EXPECT_THROW(custom_assignment({0, 2}), std::invalid_argument);
  EXPECT_THROW(custom_assignment({}), std::invalid_argument);
}

TEST(Compile, ExampleThree) {
  const auto scheme = compile(fixture("example-10x5"), window_assignment(10, 4));
  EXPECT_EQ(scheme.regularity, 4u);
  EXPECT_EQ(scheme.rounds.size(), 2u);
  EXPECT_EQ(scheme.predicted.computation, R(6));
  EXPECT_EQ(scheme.predicted.total_units, R(40, 3));
  ASSERT_TRUE(scheme.predicted.communication);
  EXPECT_EQ(*scheme.predicted.communication, R(8, 15));
  EXPECT_FALSE(scheme.predicted.exceeds_one);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(scheme.rounds[0].node_function[k], (2 * k) % 5);
    EXPECT_EQ(scheme.rounds[1].node_function[k], (2 * k + 1) % 5);
  }
}

TEST(Compile, ExampleTwoCustom) {
  const auto scheme = compile(fixture("example-6x4"), custom_assignment({0, 0, 1, 0, 0, 1}));
  EXPECT_EQ(scheme.predicted.computation, R(3));
  EXPECT_EQ(scheme.predicted.total_units, R(6));
  EXPECT_FALSE(scheme.predicted.communication.has_value());

  const MulticastGroup& g0 = scheme.rounds[0].groups[0];
  ASSERT_EQ(g0.members.size(), 3u);
  EXPECT_EQ(g0.members[0], (GroupMember{2, 0, 0}));
  EXPECT_EQ(g0.members[1], (GroupMember{1, 1, 0}));
  EXPECT_EQ(g0.members[2], (GroupMember{0, 2, 1}));
  // Node 0: v(0,1) + v(1,0); node 1: v(0,2) + v(1,0); node 2: v(0,2) + v(0,1).
  EXPECT_EQ(g0.recipe(0), (std::vector<SegmentRef>{{0, 1, 0}, {1, 0, 0}}));
  EXPECT_EQ(g0.recipe(1), (std::vector<SegmentRef>{{0, 2, 0}, {1, 0, 1}}));
  EXPECT_EQ(g0.recipe(2), (std::vector<SegmentRef>{{0, 2, 1}, {0, 1, 1}}));
  EXPECT_EQ(g0.recipients(0), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(g0.recipients(1), (std::vector<std::size_t>{0, 2}));
}

TEST(Compile, SubsetLoadClosedForm) {
  for (std::size_t K = 3; K <= 9; ++K) {
    for (std::size_t t = 1; t < K; ++t) {
      const Pda p = build_subset(K, t);
      if (t == 0) continue;
      for (std::size_t s = 1; s <= K; ++s) {
        const auto scheme = compile(p, window_assignment(K, s));
        const Rational expected = R(static_cast<std::int64_t>(s), static_cast<std::int64_t>(t)) *
                                  (R(1) - R(static_cast<std::int64_t>(t), static_cast<std::int64_t>(K)));
        ASSERT_TRUE(scheme.predicted.communication);
        EXPECT_EQ(*scheme.predicted.communication, expected) << K << " " << t << " " << s;
        EXPECT_EQ(scheme.predicted.exceeds_one, expected > R(1));
        EXPECT_EQ(scheme.predicted.computation, R(static_cast<std::int64_t>(t)));
      }
    }
  }
}

TEST(Compile, SingleFunctionSubsetIsOptimalForm) {
  const auto scheme = compile(build_subset(8, 3), window_assignment(8, 1));
  EXPECT_EQ(*scheme.predicted.communication, R(1, 3) * (R(1) - R(3, 8)));
}

TEST(Compile, PairGroupsDoubleTheLabelCount) {
  const Pda p = build_partition(2, 1);  // g = 2
  const auto scheme = compile(p, window_assignment(4, 1));
  EXPECT_EQ(scheme.predicted.total_units, R(2 * static_cast<std::int64_t>(p.num_labels())));
}

TEST(Compile, Errors) {
  const Pda irregular = parse_pda("3 3 1 4\n* 0 1\n0 * 2\n3 2 *\n");
  ASSERT_FALSE(validate(irregular).regularity.has_value());
  try {
    compile(irregular, window_assignment(3, 1));
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), CompileErrorKind::kNonRegular);
  }
  const Pda single = parse_pda("2 2 1 2\n* 0\n1 *\n");
  try {
    compile(single, window_assignment(2, 1));
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), CompileErrorKind::kRegularityTooLow);
  }
  try {
    compile(fixture("example-6x4"), custom_assignment({0, 1, 0, 1, 0}));
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind(), CompileErrorKind::kAssignmentSize);
  }
  const Pda empty(1, 1, 1, 0, {PdaEntry::star()});
  EXPECT_THROW(compile(empty, window_assignment(1, 1)), CompileError);
  const Pda missing(2, 2, 1, 2, {PdaEntry::star(), PdaEntry::code(0), PdaEntry::code(0), PdaEntry::star()});
  EXPECT_THROW(compile(missing, window_assignment(2, 1)), PdaError);
}

void check_plan(const CompiledScheme& scheme) {
  const std::size_t K = scheme.num_nodes(), N = scheme.num_files();
  std::vector<std::vector<bool>> stores(K, std::vector<bool>(N, false));
  for (std::size_t k = 0; k < K; ++k) {
    EXPECT_EQ(scheme.placement[k].size(), scheme.pda.stars_per_column());
    for (std::size_t n : scheme.placement[k]) stores[k][n] = true;
  }
  for (const auto& round : scheme.rounds) {
    EXPECT_EQ(round.groups.size(), scheme.pda.num_labels());
    std::map<std::pair<std::size_t, std::size_t>, int> targets;
    for (const auto& group : round.groups) {
      ASSERT_EQ(group.members.size(), scheme.regularity);
      std::set<std::size_t> rows, cols;
      for (std::size_t j = 0; j < group.members.size(); ++j) {
        const auto& m = group.members[j];
        rows.insert(m.file);
        cols.insert(m.node);
        if (j > 0) {
          EXPECT_LT(group.members[j - 1].node, m.node);
        }
        EXPECT_EQ(m.function, round.node_function[m.node]);
        EXPECT_FALSE(stores[m.node][m.file]);
        ++targets[{m.node, m.file}];
        for (const auto& other : group.members) {
          if (&other != &m) {
            EXPECT_TRUE(stores[m.node][other.file]);
          }
        }
      }
      EXPECT_EQ(rows.size(), group.members.size());
      EXPECT_EQ(cols.size(), group.members.size());
    }
    // Every missing (node, file) pair is decoded exactly once per round.
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t n = 0; n < N; ++n) {
        auto it = targets.find({k, n});
        EXPECT_EQ(it == targets.end() ? 0 : it->second, stores[k][n] ? 0 : 1);
      }
    }
  }
}

TEST(Properties, PlanCompletenessAndDecodability) {
  std::vector<Pda> pdas{fixture("example-6x4"), fixture("example-10x5"), build_partition(3, 2),
                        build_partition_complement(2, 2), build_partition_complement(3, 1)};
  for (std::size_t K = 3; K <= 7; ++K) {
    for (std::size_t t = 1; t + 1 < K; ++t) pdas.push_back(build_subset(K, t));
  }
  for (const Pda& p : pdas) {
    for (std::size_t s = 1; s <= p.num_nodes(); ++s) {
      const auto scheme = compile(p, window_assignment(p.num_nodes(), s));
      EXPECT_EQ(scheme.rounds.size(), scheme.assignment.per_node);
      check_plan(scheme);
    }
  }
}

TEST(Fallback, AppliedOnlyWhenCodingDoesNotPay) {
  // subset(4,1) with s = 4: coded plan moves 12 IVAs, all IVAs are 4.
  const auto off = compile(build_subset(4, 1), window_assignment(4, 4));
  EXPECT_FALSE(off.fallback_applied);
  EXPECT_EQ(*off.predicted.communication, R(3));
  EXPECT_TRUE(off.predicted.exceeds_one);

  const auto on = compile(build_subset(4, 1), window_assignment(4, 4), {true});
  EXPECT_TRUE(on.fallback_requested);
  EXPECT_TRUE(on.fallback_applied);
  EXPECT_TRUE(on.rounds[0].groups.empty());
  ASSERT_EQ(on.uncoded.size(), 4u);
  for (const auto& u : on.uncoded) {
    EXPECT_EQ(u.transmitter, u.file);  // node n is the only one storing file n
    EXPECT_EQ(u.recipients.size(), 3u);
  }
  EXPECT_EQ(on.predicted.total_units, R(4));
  EXPECT_EQ(*on.predicted.communication, R(1));

  const auto skipped = compile(fixture("example-10x5"), window_assignment(10, 4), {true});
  EXPECT_TRUE(skipped.fallback_requested);
  EXPECT_FALSE(skipped.fallback_applied);
  EXPECT_EQ(skipped.rounds, compile(fixture("example-10x5"), window_assignment(10, 4)).rounds);
}

TEST(Properties, Deterministic) {
  const auto a = compile(build_partition(3, 2), window_assignment(9, 6));
  const auto b = compile(build_partition(3, 2), window_assignment(9, 6));
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace cdc
