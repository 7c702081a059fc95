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

// Text renderings shared by the analyze and reproduce subcommands.

#ifndef CDC_TOOLS_CLI_REPORTS_HPP_
#define CDC_TOOLS_CLI_REPORTS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdc/analysis.hpp"
#include "cdc/compile.hpp"
#include "cdc/sim.hpp"

namespace cdc::cli {

using RsPair = std::pair<std::uint64_t, std::uint64_t>;

// Pairs for `analyze table`: the nine ratio-table pairs, or every (r, s)
// with 1 <= r < K and 1 <= s <= K when `all` is set. Inadmissible pairs
// for the chosen scheme are dropped.
std::vector<RsPair> table_pairs(std::uint64_t K, SchemeId scheme, bool all);

// "r,s,Lstar,L<i>,H<i>" with values to four decimals.
std::string ratio_table_csv(std::uint64_t K, SchemeId scheme, const std::vector<RsPair>& pairs);
std::string ratio_table_json(std::uint64_t K, SchemeId scheme, const std::vector<RsPair>& pairs);

// "K,s,Q_Li,Q_1" for s = K / w over the listed K.
std::string q_count_csv(const std::vector<std::uint64_t>& nodes, std::uint64_t w);

// "K,r,s,Q_Li,Q_1" over explicit triples.
std::string q_triple_csv(const std::vector<std::vector<std::uint64_t>>& triples);

// "K,r,s,Q_Li,Q_new,N_Li,N_scheme2,N_scheme3"; absent file counts are empty.
std::string compare_csv(const std::vector<FileComparison>& rows);
std::string compare_json(const std::vector<FileComparison>& rows);

std::string scan_summary(const ScanResult& result, bool fast);
// "K,r,s,H,H_exact" per K.
std::string scan_per_k_csv(const ScanResult& result);

// Pretty multi-line overview of a compiled scheme.
std::string describe_scheme(const CompiledScheme& scheme);

struct Artifact {
  std::string name;
  std::string content;
};

std::vector<std::string> reproduce_targets();
// Files for one target; throws std::invalid_argument on unknown targets.
std::vector<Artifact> reproduce(std::string_view target);
// {"target", "files": [{"path", "bytes", "sha256"}]}.
std::string manifest_json(std::string_view target, const std::vector<Artifact>& files);

}  // namespace cdc::cli

#endif  // CDC_TOOLS_CLI_REPORTS_HPP_
