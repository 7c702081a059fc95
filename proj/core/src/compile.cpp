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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

namespace cdc {

FunctionAssignment window_assignment(std::size_t num_nodes, std::size_t replication) {
  const std::size_t K = num_nodes;
  const std::size_t s = replication;
  if (K == 0) throw std::invalid_argument("window assignment needs K >= 1");
  if (s < 1 || s > K) {
    throw std::invalid_argument("replication factor s=" + std::to_string(s) +
                                " outside [1, K=" + std::to_string(K) + "]");
  }
  const std::size_t d = std::gcd(K, s);
  FunctionAssignment out;
  out.num_functions = K / d;
  out.replication = s;
  out.per_node = s / d;
  out.node_functions.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    auto& list = out.node_functions[k];
    list.reserve(out.per_node);
    for (std::size_t i = 0; i < out.per_node; ++i) {
      list.push_back((k * out.per_node + i) % out.num_functions);
    }
  }
  return out;
}

FunctionAssignment custom_assignment(std::vector<std::size_t> per_node) {
  if (per_node.empty()) throw std::invalid_argument("custom assignment is empty");
  std::set<std::size_t> distinct(per_node.begin(), per_node.end());
  if (*distinct.rbegin() + 1 != distinct.size()) {
    throw std::invalid_argument("custom assignment ids must cover 0..Q-1 without gaps");
  }
  FunctionAssignment out;
  out.num_functions = distinct.size();
  out.per_node = 1;
  out.node_functions.reserve(per_node.size());
  for (std::size_t q : per_node) out.node_functions.push_back({q});
  return out;
}

std::vector<SegmentRef> MulticastGroup::recipe(std::size_t transmitter) const {
  std::vector<SegmentRef> terms;
  terms.reserve(members.size() - 1);
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (t == transmitter) continue;
    terms.push_back({members[t].function, members[t].file, segment_index(t, transmitter)});
  }
  return terms;
}

std::vector<std::size_t> MulticastGroup::recipients(std::size_t transmitter) const {
  std::vector<std::size_t> out;
  out.reserve(members.size() - 1);
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (t != transmitter) out.push_back(members[t].node);
  }
  return out;
}

std::vector<FileSet> placement_from_pda(const Pda& pda) {
  std::vector<FileSet> out(pda.num_nodes());
  for (std::size_t n = 0; n < pda.num_files(); ++n) {
    auto row = pda.row(n);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].is_star()) out[k].push_back(n);
    }
  }
  return out;
}

PredictedLoads predicted_loads(const CompiledScheme& scheme) {
  const auto& pda = scheme.pda;
  const auto K = static_cast<std::int64_t>(pda.num_nodes());
  const auto N = static_cast<std::int64_t>(pda.num_files());
  const auto Z = static_cast<std::int64_t>(pda.stars_per_column());
  const auto S = static_cast<std::int64_t>(pda.num_labels());
  const auto g = static_cast<std::int64_t>(scheme.regularity);
  const auto Q = static_cast<std::int64_t>(scheme.assignment.num_functions);
  const auto e = static_cast<std::int64_t>(scheme.assignment.per_node);

  PredictedLoads out;
  out.computation = Rational(K * Z, N);
  const Rational coded_units = Rational(e * g * S, g - 1);
  std::optional<Rational> coded_load;
  if (scheme.assignment.is_window()) {
    const auto s = static_cast<std::int64_t>(*scheme.assignment.replication);
    coded_load = Rational(g * s * S, (g - 1) * K * N);
  }
  if (scheme.fallback_applied) {
    out.total_units = Rational(static_cast<std::int64_t>(scheme.uncoded.size()));
    if (coded_load) out.communication = out.total_units / Rational(Q * N);
  } else {
    out.total_units = coded_units;
    out.communication = coded_load;
  }
  out.exceeds_one = coded_load && *coded_load > Rational(1);
  return out;
}

namespace {

std::vector<UncodedTransmission> uncoded_plan(const std::vector<FileSet>& placement,
                                              const FunctionAssignment& assignment,
                                              std::size_t num_files) {
  const std::size_t K = placement.size();
  std::vector<std::vector<bool>> stores(K, std::vector<bool>(num_files, false));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n : placement[k]) stores[k][n] = true;
  }
  // (function, file) -> (first round needed, nodes needing it)
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::set<std::size_t>>>
      needed;
  for (std::size_t i = 0; i < assignment.per_node; ++i) {
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t q = assignment.node_functions[k][i];
      for (std::size_t n = 0; n < num_files; ++n) {
        if (stores[k][n]) continue;
        auto [it, inserted] = needed.try_emplace({q, n}, i, std::set<std::size_t>{});
        it->second.second.insert(k);
      }
    }
  }
  std::vector<UncodedTransmission> out;
  out.reserve(needed.size());
  for (const auto& [key, value] : needed) {
    const auto [q, n] = key;
    std::size_t sender = K;
    for (std::size_t k = 0; k < K; ++k) {
      if (stores[k][n]) {
        sender = k;
        break;
      }
    }
    if (sender == K) {
      throw std::logic_error("file " + std::to_string(n) + " is stored by no node");
    }
    out.push_back({value.first, q, n, sender,
                   std::vector<std::size_t>(value.second.begin(), value.second.end())});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.round, a.function, a.file) < std::tie(b.round, b.function, b.file);
  });
  return out;
}

}  // namespace

CompiledScheme compile(const Pda& pda, const FunctionAssignment& assignment,
                       CompileOptions options) {
  const PdaProfile profile = validate(pda);
  if (!profile.is_regular()) {
    throw CompileError(CompileErrorKind::kNonRegular,
                       "PDA " + profile.signature() + " is not regular");
  }
  if (*profile.regularity < 2) {
    throw CompileError(CompileErrorKind::kRegularityTooLow,
                       "PDA regularity g=" + std::to_string(*profile.regularity) +
                           " is below 2; no coded multicast is possible");
  }
  const std::size_t K = pda.num_nodes();
  if (assignment.num_nodes() != K) {
    throw CompileError(CompileErrorKind::kAssignmentSize,
                       "assignment covers " + std::to_string(assignment.num_nodes()) +
                           " nodes, PDA has K=" + std::to_string(K));
  }
  for (const auto& list : assignment.node_functions) {
    if (list.size() != assignment.per_node) {
      throw CompileError(CompileErrorKind::kAssignmentSize,
                         "every node must hold exactly e functions");
    }
  }

  CompiledScheme scheme{pda, *profile.regularity, placement_from_pda(pda), assignment, {}, {},
                        options.uncoded_fallback, false, {}};

  const auto table = occurrence_table(pda);
  scheme.rounds.reserve(assignment.per_node);
  for (std::size_t i = 0; i < assignment.per_node; ++i) {
    Round round;
    round.index = i;
    round.node_function.reserve(K);
    for (std::size_t k = 0; k < K; ++k) round.node_function.push_back(assignment.node_functions[k][i]);
    round.groups.reserve(table.size());
    for (Label u = 0; u < table.size(); ++u) {
      MulticastGroup group;
      group.label = u;
      group.members.reserve(table[u].size());
      for (Position p : table[u]) {
        group.members.push_back({p.row, p.col, round.node_function[p.col]});
      }
      round.groups.push_back(std::move(group));
    }
    scheme.rounds.push_back(std::move(round));
  }

  if (options.uncoded_fallback) {
    const auto g = static_cast<std::int64_t>(scheme.regularity);
    const Rational coded_units(
        static_cast<std::int64_t>(assignment.per_node) * g *
            static_cast<std::int64_t>(pda.num_labels()),
        g - 1);
    const Rational all_ivas(
        static_cast<std::int64_t>(assignment.num_functions * pda.num_files()));
    if (coded_units >= all_ivas) {
      scheme.fallback_applied = true;
      scheme.uncoded = uncoded_plan(scheme.placement, assignment, pda.num_files());
      for (auto& round : scheme.rounds) round.groups.clear();
    }
  }

  scheme.predicted = predicted_loads(scheme);
  return scheme;
}

}  // namespace cdc
