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

#include "cdc/pda.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cdc/builders.hpp"
#include "oracles.hpp"

namespace cdc {
namespace {

constexpr const char* kExample6x4 =
    "6 4 2 4\n"
    "* * 0 * 1 2\n"
    "* 0 * 1 * 3\n"
    "0 * * 2 3 *\n"
    "1 2 3 * * *\n";

Pda with_entry(const Pda& p, std::size_t n, std::size_t k, PdaEntry e) {
  std::vector<PdaEntry> grid(p.entries().begin(), p.entries().end());
  grid[n * p.num_nodes() + k] = e;
  return Pda(p.num_nodes(), p.num_files(), p.stars_per_column(), p.num_labels(), grid);
}

TEST(Validate, ExampleSixByFourIsThreeRegular) {
  const PdaProfile profile = validate(parse_pda(kExample6x4));
  ASSERT_TRUE(profile.regularity.has_value());
  EXPECT_EQ(*profile.regularity, 3u);
  EXPECT_EQ(profile.stars_per_column, 2u);
  EXPECT_EQ(profile.num_labels, 4u);
  EXPECT_EQ(profile.signature(), "3-(6,4,2,4)");
  EXPECT_EQ(profile.coded_entries, 12u);
  EXPECT_EQ(profile.occurrence_counts, (std::vector<std::size_t>{3, 3, 3, 3}));
}

TEST(Validate, AllStarGridWithNoLabelsIsDegenerateButValid) {
  const Pda p(1, 1, 1, 0, {PdaEntry::star()});
  const PdaProfile profile = validate(p);
  EXPECT_FALSE(profile.regularity.has_value());
  EXPECT_EQ(profile.num_labels, 0u);
  EXPECT_EQ(profile.signature(), "(1,1,1,0)");
}

TEST(Validate, RelabelledEntryReportsFirstPairViolation) {
  const Pda bad = with_entry(fixture("example-6x4"), 0, 2, PdaEntry::code(1));
  EXPECT_FALSE(oracle::brute_check(bad).has_value());
  try {
    validate(bad);
    FAIL() << "expected PairViolation";
  } catch (const PdaError& e) {
    EXPECT_EQ(e.kind(), PdaErrorKind::kPairViolation);
    EXPECT_EQ(e.label(), 1u);
    EXPECT_EQ(e.first(), (Position{0, 2}));
    EXPECT_EQ(e.second(), (Position{0, 4}));
  }
}

TEST(Validate, ColumnStarCountNamesColumn) {
  const Pda bad = with_entry(fixture("example-6x4"), 0, 3, PdaEntry::code(2));
  try {
    validate(bad);
    FAIL() << "expected ColumnStarCount";
  } catch (const PdaError& e) {
    EXPECT_EQ(e.kind(), PdaErrorKind::kColumnStarCount);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_EQ(e.found(), 1u);
    EXPECT_EQ(e.expected(), 2u);
  }
}

TEST(Validate, MissingLabel) {
  // Declared S = 2 but only label 0 appears.
  const Pda p(2, 2, 1, 2, {PdaEntry::star(), PdaEntry::code(0), PdaEntry::code(0), PdaEntry::star()});
  try {
    validate(p);
    FAIL() << "expected MissingLabel";
  } catch (const PdaError& e) {
    EXPECT_EQ(e.kind(), PdaErrorKind::kMissingLabel);
    EXPECT_EQ(e.label(), 1u);
  }
}

TEST(Validate, ConstructorRejectsShapeErrors) {
  EXPECT_THROW(Pda(2, 2, 1, 1, {PdaEntry::star()}), std::invalid_argument);
  EXPECT_THROW(Pda(1, 1, 1, 1, {PdaEntry::code(1)}), std::invalid_argument);
  EXPECT_THROW(Pda(1, 1, 2, 0, {PdaEntry::star()}), std::invalid_argument);
}

TEST(Occurrences, LabelZeroOfExampleOne) {
  const auto occ = occurrences(fixture("example-6x4"), 0);
  EXPECT_EQ(occ, (std::vector<Position>{{2, 0}, {1, 1}, {0, 2}}));
}

TEST(Occurrences, LabelThreeSortedByColumn) {
  const auto occ = occurrences(fixture("example-6x4"), 3);
  EXPECT_EQ(occ, (std::vector<Position>{{3, 2}, {2, 4}, {1, 5}}));
}

TEST(Occurrences, UnknownLabel) {
  try {
    occurrences(fixture("example-6x4"), 4);
    FAIL() << "expected UnknownLabel";
  } catch (const PdaError& e) {
    EXPECT_EQ(e.kind(), PdaErrorKind::kUnknownLabel);
  }
}

TEST(Text, RenderFirstRow) {
  const std::string text = render_pda(fixture("example-6x4"));
  const auto first_newline = text.find('\n');
  EXPECT_EQ(text.substr(0, first_newline), "6 4 2 4");
  EXPECT_EQ(text.substr(first_newline + 1, 11), "* * 0 * 1 2");
}

TEST(Text, ParseMatchesFixture) { EXPECT_EQ(parse_pda(kExample6x4), fixture("example-6x4")); }

TEST(Text, RoundTripExampleTen) {
  const Pda p = fixture("example-10x5");
  EXPECT_EQ(parse_pda(render_pda(p)), p);
}

TEST(Text, RaggedRowsRejectedWithLine) {
  try {
    parse_pda("2 2 1 1\n* 0\n0 * *\n");
    FAIL() << "expected parse error";
  } catch (const PdaParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Text, CommentsAndBlankLines) {
  const Pda p = parse_pda("# header\n2 2 1 1 # trailing\n\n* 0\n0 *\n");
  EXPECT_EQ(p.num_nodes(), 2u);
  EXPECT_EQ(p.at(0, 1).label(), 0u);
}

TEST(Text, BadTokenAndHeader) {
  EXPECT_THROW(parse_pda("2 2 1\n* 0\n0 *\n"), PdaParseError);
  EXPECT_THROW(parse_pda("2 2 1 1\n* x\n0 *\n"), PdaParseError);
  EXPECT_THROW(parse_pda("2 2 1 1\n* 0\n"), PdaParseError);
  EXPECT_THROW(parse_pda(""), PdaParseError);
}

TEST(Text, SparseLabelsAreCanonicalized) {
  const Pda p = parse_pda("2 2 1 1\n* 7\n7 *\n");
  EXPECT_EQ(p.at(0, 1).label(), 0u);
  EXPECT_EQ(validate(p).signature(), "2-(2,2,1,1)");
}

// Entry counting: g S = K (N - Z), on every builder output small enough to
// enumerate, and crossing entries of equal labels are stars.
TEST(Properties, CountingAndCrossingStars) {
  std::vector<Pda> pdas{fixture("example-6x4"), fixture("example-10x5")};
  for (std::size_t K = 2; K <= 8; ++K) {
    for (std::size_t t = 1; t < K; ++t) pdas.push_back(build_subset(K, t));
  }
  pdas.push_back(build_partition(3, 2));
  pdas.push_back(build_partition_complement(3, 2));
  for (const Pda& p : pdas) {
    const PdaProfile profile = validate(p);
    ASSERT_TRUE(profile.regularity);
    EXPECT_EQ(*profile.regularity * p.num_labels(), p.num_nodes() * (p.num_files() - p.stars_per_column()));
    for (Label u = 0; u < p.num_labels(); ++u) {
      const auto occ = occurrences(p, u);
      for (std::size_t i = 0; i < occ.size(); ++i) {
        for (std::size_t j = i + 1; j < occ.size(); ++j) {
          EXPECT_TRUE(p.at(occ[i].row, occ[j].col).is_star());
          EXPECT_TRUE(p.at(occ[j].row, occ[i].col).is_star());
        }
      }
    }
  }
}

// Random single-cell mutations: validate accepts exactly when the
// brute-force pair scan does, and repeated calls agree.
TEST(Properties, MutationsAgreeWithBruteForce) {
  std::mt19937_64 rng(20240611);
  const std::vector<Pda> bases{fixture("example-6x4"), fixture("example-10x5"), build_subset(5, 2)};
  for (int trial = 0; trial < 600; ++trial) {
    const Pda& base = bases[static_cast<std::size_t>(trial) % bases.size()];
    std::uniform_int_distribution<std::size_t> row(0, base.num_files() - 1);
    std::uniform_int_distribution<std::size_t> col(0, base.num_nodes() - 1);
    std::uniform_int_distribution<std::size_t> label(0, base.num_labels());
    const std::size_t pick = label(rng);
    const PdaEntry e = pick == base.num_labels() ? PdaEntry::star() : PdaEntry::code(static_cast<Label>(pick));
    Pda mutated = with_entry(base, row(rng), col(rng), e);
    if (trial % 3 == 0) mutated = with_entry(mutated, row(rng), col(rng), PdaEntry::star());
    const auto expected = oracle::brute_check(mutated);
    bool ok = true;
    std::string first_error;
    try {
      validate(mutated);
    } catch (const PdaError& err) {
      ok = false;
      first_error = err.what();
    }
    EXPECT_EQ(ok, expected.has_value()) << render_pda(mutated);
    try {
      validate(mutated);
    } catch (const PdaError& err) {
      EXPECT_EQ(first_error, err.what());
    }
  }
}

}  // namespace
}  // namespace cdc
