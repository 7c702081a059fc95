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

// Placement delivery arrays.
//
// A (K, N, Z, S) PDA is an N x K grid whose entries are either a star or an
// integer label in [0, S). Rows are files, columns are computing nodes. A
// star at (n, k) means node k stores file n; the positions sharing one label
// form one coded multicast group. The three structural conditions are:
//
//   1. every column holds exactly Z stars;
//   2. every label in [0, S) occurs at least once;
//   3. two occurrences of the same label sit in distinct rows and distinct
//      columns, and the two entries crossing them are stars.

#ifndef CDC_PDA_HPP_
#define CDC_PDA_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdc {

using Label = std::uint32_t;

class PdaEntry {
 public:
  constexpr PdaEntry() = default;
  static constexpr PdaEntry star() { return PdaEntry(); }
  static constexpr PdaEntry code(Label label) { return PdaEntry(static_cast<std::int64_t>(label)); }

  constexpr bool is_star() const { return raw_ < 0; }
  // Precondition: !is_star().
  constexpr Label label() const { return static_cast<Label>(raw_); }

  friend constexpr bool operator==(PdaEntry, PdaEntry) = default;

 private:
  constexpr explicit PdaEntry(std::int64_t raw) : raw_(raw) {}
  std::int64_t raw_ = -1;
};

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;
  friend constexpr bool operator==(const Position&, const Position&) = default;
};

// An N x K array with its declared parameters. Construction checks shape
// and label range only; the structural conditions are checked by validate().
class Pda {
 public:
  // Throws std::invalid_argument if the grid size is not N*K, a dimension
  // is zero, Z > N, or a label is >= S.
  Pda(std::size_t num_nodes, std::size_t num_files, std::size_t stars_per_column,
      std::size_t num_labels, std::vector<PdaEntry> grid);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_files() const { return num_files_; }
  std::size_t stars_per_column() const { return stars_per_column_; }
  std::size_t num_labels() const { return num_labels_; }

  const PdaEntry& at(std::size_t row, std::size_t col) const {
    return grid_[row * num_nodes_ + col];
  }
  std::span<const PdaEntry> row(std::size_t n) const {
    return std::span<const PdaEntry>(grid_).subspan(n * num_nodes_, num_nodes_);
  }
  std::span<const PdaEntry> entries() const { return grid_; }

  friend bool operator==(const Pda&, const Pda&) = default;

 private:
  std::size_t num_nodes_;
  std::size_t num_files_;
  std::size_t stars_per_column_;
  std::size_t num_labels_;
  std::vector<PdaEntry> grid_;
};

struct PdaProfile {
  std::size_t num_nodes = 0;
  std::size_t num_files = 0;
  std::size_t stars_per_column = 0;
  std::size_t num_labels = 0;
  // Set iff every label occurs the same number of times (and S > 0).
  std::optional<std::size_t> regularity;
  std::vector<std::size_t> occurrence_counts;
  // (N - Z) * K.
  std::size_t coded_entries = 0;

  bool is_regular() const { return regularity.has_value(); }
  // "g-(K,N,Z,S)" when regular, "(K,N,Z,S)" otherwise.
  std::string signature() const;

  friend bool operator==(const PdaProfile&, const PdaProfile&) = default;
};

enum class PdaErrorKind { kColumnStarCount, kMissingLabel, kPairViolation, kUnknownLabel };

class PdaError : public std::runtime_error {
 public:
  PdaError(PdaErrorKind kind, std::string message);

  static PdaError column_star_count(std::size_t column, std::size_t found, std::size_t expected);
  static PdaError missing_label(Label label);
  static PdaError pair_violation(Position first, Position second, Label label);
  static PdaError unknown_label(Label label, std::size_t num_labels);

  PdaErrorKind kind() const { return kind_; }
  // Column for kColumnStarCount.
  std::size_t column() const { return column_; }
  std::size_t found() const { return found_; }
  std::size_t expected() const { return expected_; }
  Label label() const { return label_; }
  // The two equal-label entries of the offending 2x2 subarray, in
  // row-major order.
  Position first() const { return first_; }
  Position second() const { return second_; }

 private:
  PdaErrorKind kind_;
  std::size_t column_ = 0;
  std::size_t found_ = 0;
  std::size_t expected_ = 0;
  Label label_ = 0;
  Position first_{};
  Position second_{};
};

// Checks the three PDA conditions in order and returns the profile.
// Throws PdaError naming the first violation; pair violations are reported
// for the earliest pair in row-major order.
PdaProfile validate(const Pda& pda);

// Occurrences of `label`, sorted by ascending column.
// Throws PdaError(kUnknownLabel) if label >= S.
std::vector<Position> occurrences(const Pda& pda, Label label);

// All occurrence lists at once, indexed by label, each sorted by column.
std::vector<std::vector<Position>> occurrence_table(const Pda& pda);

class PdaParseError : public std::runtime_error {
 public:
  PdaParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Text format: a "K N Z S" header line, then N lines of K tokens, each "*"
// or a decimal label. "#" starts a comment running to end of line; blank
// lines are ignored. Labels are canonicalized to 0..S-1: files already
// using [0, S) are kept verbatim, otherwise exactly S distinct labels must
// appear and are renumbered in ascending order.
Pda parse_pda(std::string_view text);
std::string render_pda(const Pda& pda);

}  // namespace cdc

#endif  // CDC_PDA_HPP_
