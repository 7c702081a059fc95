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
#include <charconv>
#include <map>
#include <sstream>
#include <utility>

namespace cdc {

PdaParseError::PdaParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_count(const Line& line, const Token& tok, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
    throw PdaParseError(line.number, tok.column,
                        std::string("expected non-negative integer for ") + what + ", got '" +
                            std::string(tok.text) + "'");
  }
  return value;
}

}  // namespace

Pda parse_pda(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw PdaParseError(1, 1, "missing 'K N Z S' header");
  const Line& header = lines.front();
  if (header.tokens.size() != 4) {
    throw PdaParseError(header.number, header.tokens.front().column,
                        "header must have exactly 4 fields 'K N Z S', found " +
                            std::to_string(header.tokens.size()));
  }
  const std::size_t K = parse_count(header, header.tokens[0], "K");
  const std::size_t N = parse_count(header, header.tokens[1], "N");
  const std::size_t Z = parse_count(header, header.tokens[2], "Z");
  const std::size_t S = parse_count(header, header.tokens[3], "S");
  if (K == 0 || N == 0) {
    throw PdaParseError(header.number, header.tokens[K == 0 ? 0 : 1].column,
                        "K and N must be positive");
  }
  if (Z > N) throw PdaParseError(header.number, header.tokens[2].column, "Z exceeds N");

  const std::size_t rows_found = lines.size() - 1;
  if (rows_found != N) {
    const Line& at = rows_found > N ? lines[N + 1] : lines.back();
    throw PdaParseError(at.number, 1,
                        "expected " + std::to_string(N) + " rows, found " +
                            std::to_string(rows_found));
  }

  std::vector<std::int64_t> raw;
  raw.reserve(N * K);
  std::map<std::int64_t, Label> distinct;
  std::int64_t max_label = -1;
  for (std::size_t r = 0; r < N; ++r) {
    const Line& line = lines[r + 1];
    if (line.tokens.size() != K) {
      const Token& at = line.tokens.size() > K ? line.tokens[K] : line.tokens.back();
      throw PdaParseError(line.number, at.column,
                          "row " + std::to_string(r) + " has " +
                              std::to_string(line.tokens.size()) + " entries, expected K=" +
                              std::to_string(K));
    }
    for (const Token& tok : line.tokens) {
      if (tok.text == "*") {
        raw.push_back(-1);
        continue;
      }
      std::size_t value = parse_count(line, tok, "label");
      raw.push_back(static_cast<std::int64_t>(value));
      distinct.emplace(static_cast<std::int64_t>(value), 0);
      max_label = std::max(max_label, static_cast<std::int64_t>(value));
    }
  }

  const bool dense = max_label < static_cast<std::int64_t>(S);
  if (!dense) {
    if (distinct.size() != S) {
      // Locate the first offending token for the message.
      for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t k = 0; k < K; ++k) {
          if (raw[r * K + k] >= static_cast<std::int64_t>(S)) {
            throw PdaParseError(lines[r + 1].number, lines[r + 1].tokens[k].column,
                                "label " + std::to_string(raw[r * K + k]) +
                                    " out of range and " + std::to_string(distinct.size()) +
                                    " distinct labels cannot be renumbered into S=" +
                                    std::to_string(S));
          }
        }
      }
    }
    Label next = 0;
    for (auto& [value, dense_label] : distinct) dense_label = next++;
  }

  std::vector<PdaEntry> grid;
  grid.reserve(raw.size());
  for (std::int64_t v : raw) {
    if (v < 0) {
      grid.push_back(PdaEntry::star());
    } else {
      grid.push_back(PdaEntry::code(dense ? static_cast<Label>(v) : distinct.at(v)));
    }
  }
  return Pda(K, N, Z, S, std::move(grid));
}

std::string render_pda(const Pda& pda) {
  std::ostringstream os;
  os << pda.num_nodes() << " " << pda.num_files() << " " << pda.stars_per_column() << " "
     << pda.num_labels() << "\n";
  for (std::size_t n = 0; n < pda.num_files(); ++n) {
    auto row = pda.row(n);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) os << ' ';
      if (row[k].is_star()) {
        os << '*';
      } else {
        os << row[k].label();
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cdc
