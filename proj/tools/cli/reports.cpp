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

#include "reports.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

#include "cdc/builders.hpp"
#include "cdc/digest.hpp"
#include "cdc/scheme_json.hpp"

namespace cdc::cli {

namespace {

using Json = nlohmann::ordered_json;

Json rational_json(const Rational& v) { return Json{{"exact", v.str()}, {"approx", v.approx(4)}}; }

std::string opt_str(const std::optional<BigInt>& v) { return v ? to_string(*v) : std::string(); }

int scheme_number(SchemeId scheme) { return static_cast<int>(scheme); }

}  // namespace

std::vector<RsPair> table_pairs(std::uint64_t K, SchemeId scheme, bool all) {
  std::vector<RsPair> candidates;
  if (all) {
    for (std::uint64_t r = 1; r < K; ++r) {
      for (std::uint64_t s = 1; s <= K; ++s) candidates.emplace_back(r, s);
    }
  } else {
    candidates = ratio_table_pairs();
  }
  std::vector<RsPair> out;
  for (const auto& [r, s] : candidates) {
    if (r < K && admissible(scheme, K, r, s)) out.emplace_back(r, s);
  }
  return out;
}

std::string ratio_table_csv(std::uint64_t K, SchemeId scheme, const std::vector<RsPair>& pairs) {
  const int i = scheme_number(scheme);
  std::ostringstream os;
  os << "r,s,Lstar,L" << i << ",H" << i << "\n";
  for (const auto& [r, s] : pairs) {
    const Rational optimum = l_star(K, r, s);
    const Rational load = scheme_load(scheme, K, r, s);
    os << r << ',' << s << ',' << optimum.decimal(4) << ',' << load.decimal(4) << ','
       << (load / optimum).decimal(4) << "\n";
  }
  return os.str();
}

std::string ratio_table_json(std::uint64_t K, SchemeId scheme, const std::vector<RsPair>& pairs) {
  Json rows = Json::array();
  for (const auto& [r, s] : pairs) {
    const Rational optimum = l_star(K, r, s);
    const Rational load = scheme_load(scheme, K, r, s);
    rows.push_back(Json{{"r", r},
                        {"s", s},
                        {"Lstar", rational_json(optimum)},
                        {"L", rational_json(load)},
                        {"H", rational_json(load / optimum)}});
  }
  Json doc{{"K", K}, {"scheme", scheme_number(scheme)}, {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string q_count_csv(const std::vector<std::uint64_t>& nodes, std::uint64_t w) {
  std::ostringstream os;
  os << "K,s,Q_Li,Q_1\n";
  for (std::uint64_t K : nodes) {
    const std::uint64_t s = K / w;
    const FileComparison c = q_file_comparison(K, 1, s);
    os << K << ',' << s << ',' << to_string(c.q_li) << ',' << to_string(c.q_new) << "\n";
  }
  return os.str();
}

std::string q_triple_csv(const std::vector<std::vector<std::uint64_t>>& triples) {
  std::ostringstream os;
  os << "K,r,s,Q_Li,Q_1\n";
  for (const auto& t : triples) {
    const FileComparison c = q_file_comparison(t.at(0), t.at(1), t.at(2));
    os << c.K << ',' << c.r << ',' << c.s << ',' << to_string(c.q_li) << ','
       << to_string(c.q_new) << "\n";
  }
  return os.str();
}

std::string compare_csv(const std::vector<FileComparison>& rows) {
  std::ostringstream os;
  os << "K,r,s,Q_Li,Q_new,N_Li,N_scheme2,N_scheme3\n";
  for (const auto& c : rows) {
    os << c.K << ',' << c.r << ',' << c.s << ',' << to_string(c.q_li) << ',' << to_string(c.q_new)
       << ',' << to_string(c.n_li) << ',' << opt_str(c.n_scheme2) << ',' << opt_str(c.n_scheme3)
       << "\n";
  }
  return os.str();
}

std::string compare_json(const std::vector<FileComparison>& rows) {
  Json out = Json::array();
  for (const auto& c : rows) {
    auto big = [](const std::optional<BigInt>& v) { return v ? Json(to_string(*v)) : Json(nullptr); };
    out.push_back(Json{{"K", c.K},
                       {"r", c.r},
                       {"s", c.s},
                       {"Q_Li", to_string(c.q_li)},
                       {"Q_new", to_string(c.q_new)},
                       {"N_Li", to_string(c.n_li)},
                       {"N_scheme2", big(c.n_scheme2)},
                       {"N_scheme3", big(c.n_scheme3)}});
  }
  return out.dump(2) + "\n";
}

std::string scan_summary(const ScanResult& result, bool fast) {
  std::ostringstream os;
  os << "scheme=" << scheme_number(result.scheme) << " Kmax=" << result.k_max
     << " bound=" << result.bound.str() << " mode=" << (fast ? "filtered" : "exact") << "\n";
  os << "evaluated=" << result.evaluated << " skipped=" << result.skipped
     << " exact_checks=" << result.exact_checks << "\n";
  if (result.worst) {
    const auto& w = *result.worst;
    os << "max_H=" << w.h.decimal(4) << " (" << w.h.str() << ") at K=" << w.K << " r=" << w.r
       << " s=" << w.s << "\n";
  } else {
    os << "max_H=none\n";
  }
  os << "violations=" << result.violations.size() << "\n";
  for (const auto& v : result.violations) {
    os << "violation K=" << v.K << " r=" << v.r << " s=" << v.s << " H=" << v.h.decimal(6) << "\n";
  }
  return os.str();
}

std::string scan_per_k_csv(const ScanResult& result) {
  std::ostringstream os;
  os << "K,r,s,H,H_exact\n";
  for (const auto& p : result.per_k) {
    os << p.K << ',' << p.r << ',' << p.s << ',' << p.h.decimal(4) << ',' << p.h.str() << "\n";
  }
  return os.str();
}

std::string describe_scheme(const CompiledScheme& scheme) {
  const auto& a = scheme.assignment;
  const auto& p = scheme.predicted;
  std::ostringstream os;
  os << "PDA " << scheme.regularity << "-(" << scheme.num_nodes() << "," << scheme.num_files()
     << "," << scheme.pda.stars_per_column() << "," << scheme.pda.num_labels() << ")\n";
  os << "assignment " << (a.is_window() ? "window" : "custom") << ": Q=" << a.num_functions;
  if (a.replication) os << " s=" << *a.replication;
  os << " e=" << a.per_node << "\n";
  os << "r=" << p.computation.str();
  if (p.communication) {
    os << " L=" << p.communication->str() << " (" << p.communication->decimal(4) << ")";
  }
  os << " total_units=" << p.total_units.str() << (p.exceeds_one ? " exceeds_one" : "") << "\n";
  os << "uncoded_fallback requested=" << (scheme.fallback_requested ? "yes" : "no")
     << " applied=" << (scheme.fallback_applied ? "yes" : "no") << "\n";
  for (std::size_t k = 0; k < scheme.placement.size(); ++k) {
    os << "node " << k << ": files {";
    for (std::size_t i = 0; i < scheme.placement[k].size(); ++i) {
      os << (i ? "," : "") << scheme.placement[k][i];
    }
    os << "} functions [";
    for (std::size_t i = 0; i < a.node_functions[k].size(); ++i) {
      os << (i ? "," : "") << a.node_functions[k][i];
    }
    os << "]\n";
  }
  for (const auto& round : scheme.rounds) {
    os << "round " << round.index << ": " << round.groups.size() << " groups";
    std::size_t uncoded = 0;
    for (const auto& u : scheme.uncoded) uncoded += u.round == round.index;
    if (uncoded) os << ", " << uncoded << " uncoded";
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<Artifact> example_run(std::string_view name, const CompiledScheme& scheme) {
  const Dataset data = gen_dataset(scheme.num_files(), 256, 1);
  const Simulation sim = simulate(scheme, data);
  const std::string stem(name);
  return {{stem + ".scheme.json", scheme_to_json(scheme)},
          {stem + ".report.json", report_to_json(sim.report)},
          {stem + ".trace.csv", trace_to_csv(sim.log)}};
}

}  // namespace

std::vector<std::string> reproduce_targets() {
  return {"table-5", "table-6", "table-7", "table-8", "example-2", "example-3"};
}

std::vector<Artifact> reproduce(std::string_view target) {
  if (target == "all") {
    std::vector<Artifact> out;
    for (const auto& t : reproduce_targets()) {
      auto part = reproduce(t);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (target == "table-5") {
    return {{"table-5.csv", ratio_table_csv(16, SchemeId::k1, table_pairs(16, SchemeId::k1, false))}};
  }
  if (target == "table-6") {
    return {{"table-6.csv", q_count_csv({2, 4, 6, 8, 10, 12, 14, 16, 18, 20}, 2)}};
  }
  if (target == "table-7") {
    return {{"table-7.csv", q_count_csv({3, 6, 9, 12, 15, 18}, 3)}};
  }
  if (target == "table-8") {
    return {{"table-8.csv",
             q_triple_csv({{16, 3, 2}, {16, 5, 4}, {16, 8, 6}, {20, 3, 2}, {20, 5, 4}, {20, 8, 6}})}};
  }
  if (target == "example-2") {
    return example_run(target, compile(fixture("example-6x4"), custom_assignment({0, 0, 1, 0, 0, 1})));
  }
  if (target == "example-3") {
    return example_run(target, compile(fixture("example-10x5"), window_assignment(10, 4)));
  }
  throw std::invalid_argument("unknown reproduce target '" + std::string(target) + "'");
}

std::string manifest_json(std::string_view target, const std::vector<Artifact>& files) {
  Json list = Json::array();
  for (const auto& f : files) {
    list.push_back(Json{{"path", f.name}, {"bytes", f.content.size()}, {"sha256", sha256_hex(f.content)}});
  }
  Json doc{{"target", std::string(target)}, {"files", std::move(list)}};
  return doc.dump(2) + "\n";
}

}  // namespace cdc::cli
