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

#include <algorithm>
#include <sstream>
#include <utility>

namespace cdc {

Pda::Pda(std::size_t num_nodes, std::size_t num_files, std::size_t stars_per_column,
         std::size_t num_labels, std::vector<PdaEntry> grid)
    : num_nodes_(num_nodes),
      num_files_(num_files),
      stars_per_column_(stars_per_column),
      num_labels_(num_labels),
      grid_(std::move(grid)) {
  if (num_nodes_ == 0 || num_files_ == 0) {
    throw std::invalid_argument("PDA needs at least one row and one column");
  }
  if (grid_.size() != num_nodes_ * num_files_) {
    std::ostringstream os;
    os << "PDA grid has " << grid_.size() << " entries, expected N*K = " << num_files_ << "*"
       << num_nodes_;
    throw std::invalid_argument(os.str());
  }
  if (stars_per_column_ > num_files_) {
    throw std::invalid_argument("Z exceeds N");
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!grid_[i].is_star() && grid_[i].label() >= num_labels_) {
      std::ostringstream os;
      os << "label " << grid_[i].label() << " at (" << i / num_nodes_ << "," << i % num_nodes_
         << ") is not below S=" << num_labels_;
      throw std::invalid_argument(os.str());
    }
  }
}

std::string PdaProfile::signature() const {
  std::ostringstream os;
  if (regularity) os << *regularity << "-";
  os << "(" << num_nodes << "," << num_files << "," << stars_per_column << "," << num_labels
     << ")";
  return os.str();
}

PdaError::PdaError(PdaErrorKind kind, std::string message)
    : std::runtime_error(std::move(message)), kind_(kind) {}

PdaError PdaError::column_star_count(std::size_t column, std::size_t found, std::size_t expected) {
  std::ostringstream os;
  os << "column " << column << " has " << found << " stars, expected Z=" << expected;
  PdaError e(PdaErrorKind::kColumnStarCount, os.str());
  e.column_ = column;
  e.found_ = found;
  e.expected_ = expected;
  return e;
}

PdaError PdaError::missing_label(Label label) {
  PdaError e(PdaErrorKind::kMissingLabel, "label " + std::to_string(label) + " never occurs");
  e.label_ = label;
  return e;
}

PdaError PdaError::pair_violation(Position first, Position second, Label label) {
  std::ostringstream os;
  os << "label " << label << " at (" << first.row << "," << first.col << ") and (" << second.row
     << "," << second.col << "): subarray rows {" << first.row << "," << second.row
     << "} x cols {" << first.col << "," << second.col << "} is not a star-crossed pair";
  PdaError e(PdaErrorKind::kPairViolation, os.str());
  e.label_ = label;
  e.first_ = first;
  e.second_ = second;
  return e;
}

PdaError PdaError::unknown_label(Label label, std::size_t num_labels) {
  PdaError e(PdaErrorKind::kUnknownLabel,
             "label " + std::to_string(label) + " is not below S=" + std::to_string(num_labels));
  e.label_ = label;
  return e;
}

namespace {

// Occurrences of every label in row-major order.
std::vector<std::vector<Position>> row_major_occurrences(const Pda& pda) {
  std::vector<std::vector<Position>> out(pda.num_labels());
  for (std::size_t n = 0; n < pda.num_files(); ++n) {
    auto row = pda.row(n);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_star()) out[row[k].label()].push_back({n, k});
    }
  }
  return out;
}

bool star_crossed(const Pda& pda, Position a, Position b) {
  return a.row != b.row && a.col != b.col && pda.at(a.row, b.col).is_star() &&
         pda.at(b.row, a.col).is_star();
}

bool row_major_less(Position a, Position b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

PdaProfile validate(const Pda& pda) {
  const std::size_t K = pda.num_nodes();
  const std::size_t N = pda.num_files();

  for (std::size_t k = 0; k < K; ++k) {
    std::size_t stars = 0;
    for (std::size_t n = 0; n < N; ++n) stars += pda.at(n, k).is_star() ? 1 : 0;
    if (stars != pda.stars_per_column()) {
      throw PdaError::column_star_count(k, stars, pda.stars_per_column());
    }
  }

  auto occ = row_major_occurrences(pda);
  for (Label u = 0; u < occ.size(); ++u) {
    if (occ[u].empty()) throw PdaError::missing_label(u);
  }

  // Earliest failing pair: minimize the first entry, then the second, in
  // row-major order across all labels.
  std::optional<std::pair<Position, Position>> worst;
  Label worst_label = 0;
  for (Label u = 0; u < occ.size(); ++u) {
    const auto& list = occ[u];
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (worst && row_major_less(worst->first, list[i])) break;
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (star_crossed(pda, list[i], list[j])) continue;
        std::pair<Position, Position> candidate{list[i], list[j]};
        if (!worst || row_major_less(candidate.first, worst->first) ||
            (candidate.first == worst->first && row_major_less(candidate.second, worst->second))) {
          worst = candidate;
          worst_label = u;
        }
        break;
      }
    }
  }
  if (worst) throw PdaError::pair_violation(worst->first, worst->second, worst_label);

  PdaProfile profile;
  profile.num_nodes = K;
  profile.num_files = N;
  profile.stars_per_column = pda.stars_per_column();
  profile.num_labels = pda.num_labels();
  profile.coded_entries = (N - pda.stars_per_column()) * K;
  profile.occurrence_counts.reserve(occ.size());
  for (const auto& list : occ) profile.occurrence_counts.push_back(list.size());
  if (!occ.empty()) {
    const std::size_t g = occ.front().size();
    bool regular = std::all_of(occ.begin(), occ.end(),
                               [g](const auto& list) { return list.size() == g; });
    if (regular) profile.regularity = g;
  }
  return profile;
}

std::vector<std::vector<Position>> occurrence_table(const Pda& pda) {
  auto table = row_major_occurrences(pda);
  for (auto& list : table) {
    std::stable_sort(list.begin(), list.end(),
                     [](Position a, Position b) { return a.col < b.col; });
  }
  return table;
}

std::vector<Position> occurrences(const Pda& pda, Label label) {
  if (label >= pda.num_labels()) throw PdaError::unknown_label(label, pda.num_labels());
  std::vector<Position> out;
  for (std::size_t k = 0; k < pda.num_nodes(); ++k) {
    for (std::size_t n = 0; n < pda.num_files(); ++n) {
      const auto& e = pda.at(n, k);
      if (!e.is_star() && e.label() == label) out.push_back({n, k});
    }
  }
  return out;
}

}  // namespace cdc
