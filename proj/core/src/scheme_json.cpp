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

#include "cdc/scheme_json.hpp"

#include <sstream>

#include "json_util.hpp"

namespace cdc {

using detail::Json;

namespace {

Json pda_json(const Pda& pda, std::size_t regularity) {
  Json rows = Json::array();
  std::string text = render_pda(pda);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) rows.push_back(line);
  return Json{{"K", pda.num_nodes()},
              {"N", pda.num_files()},
              {"Z", pda.stars_per_column()},
              {"S", pda.num_labels()},
              {"g", regularity},
              {"rows", std::move(rows)}};
}

Pda pda_from_json(const Json& node) {
  std::ostringstream text;
  text << node.at("K").get<std::size_t>() << " " << node.at("N").get<std::size_t>() << " "
       << node.at("Z").get<std::size_t>() << " " << node.at("S").get<std::size_t>() << "\n";
  for (const auto& row : node.at("rows")) text << row.get<std::string>() << "\n";
  return parse_pda(text.str());
}

Json group_json(const MulticastGroup& group) {
  Json members = Json::array();
  for (const auto& m : group.members) {
    members.push_back(Json{{"node", m.node}, {"file", m.file}, {"function", m.function}});
  }
  Json messages = Json::array();
  for (std::size_t l = 0; l < group.members.size(); ++l) {
    Json terms = Json::array();
    for (const auto& term : group.recipe(l)) {
      terms.push_back(
          Json{{"function", term.function}, {"file", term.file}, {"segment", term.segment}});
    }
    messages.push_back(Json{{"transmitter", group.members[l].node},
                            {"xor", std::move(terms)},
                            {"recipients", group.recipients(l)}});
  }
  return Json{{"label", group.label}, {"members", std::move(members)},
              {"messages", std::move(messages)}};
}

}  // namespace

std::string scheme_to_json(const CompiledScheme& scheme) {
  Json doc;
  doc["format"] = std::string(kSchemeFormat);
  doc["pda"] = pda_json(scheme.pda, scheme.regularity);
  doc["placement"] = scheme.placement;

  const auto& a = scheme.assignment;
  Json assignment{{"mode", a.is_window() ? "window" : "custom"},
                  {"Q", a.num_functions},
                  {"s", a.replication ? Json(*a.replication) : Json(nullptr)},
                  {"e", a.per_node},
                  {"nodes", a.node_functions}};
  doc["assignment"] = std::move(assignment);
  doc["uncoded_fallback"] =
      Json{{"requested", scheme.fallback_requested}, {"applied", scheme.fallback_applied}};

  Json rounds = Json::array();
  for (const auto& round : scheme.rounds) {
    Json groups = Json::array();
    for (const auto& group : round.groups) groups.push_back(group_json(group));
    rounds.push_back(Json{{"round", round.index},
                          {"functions", round.node_function},
                          {"groups", std::move(groups)}});
  }
  doc["rounds"] = std::move(rounds);

  Json uncoded = Json::array();
  for (const auto& u : scheme.uncoded) {
    uncoded.push_back(Json{{"round", u.round},
                           {"function", u.function},
                           {"file", u.file},
                           {"transmitter", u.transmitter},
                           {"recipients", u.recipients}});
  }
  doc["uncoded"] = std::move(uncoded);

  const auto& p = scheme.predicted;
  doc["predicted"] = Json{
      {"r", detail::rational_json(p.computation)},
      {"L", p.communication ? detail::rational_json(*p.communication) : Json(nullptr)},
      {"total_units", detail::rational_json(p.total_units)},
      {"exceeds_one", p.exceeds_one}};
  return doc.dump(2) + "\n";
}

CompiledScheme scheme_from_json(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    if (doc.at("format").get<std::string>() != kSchemeFormat) {
      throw SchemeFormatError("unsupported scheme format '" +
                              doc.at("format").get<std::string>() + "'");
    }
    Pda pda = pda_from_json(doc.at("pda"));
    const auto regularity = doc.at("pda").at("g").get<std::size_t>();

    const Json& a = doc.at("assignment");
    FunctionAssignment assignment;
    assignment.num_functions = a.at("Q").get<std::size_t>();
    if (!a.at("s").is_null()) assignment.replication = a.at("s").get<std::size_t>();
    assignment.per_node = a.at("e").get<std::size_t>();
    assignment.node_functions = a.at("nodes").get<std::vector<std::vector<std::size_t>>>();

    CompiledScheme scheme{std::move(pda),
                          regularity,
                          doc.at("placement").get<std::vector<FileSet>>(),
                          std::move(assignment),
                          {},
                          {},
                          doc.at("uncoded_fallback").at("requested").get<bool>(),
                          doc.at("uncoded_fallback").at("applied").get<bool>(),
                          {}};

    for (const auto& r : doc.at("rounds")) {
      Round round;
      round.index = r.at("round").get<std::size_t>();
      round.node_function = r.at("functions").get<std::vector<std::size_t>>();
      for (const auto& g : r.at("groups")) {
        MulticastGroup group;
        group.label = g.at("label").get<Label>();
        for (const auto& m : g.at("members")) {
          group.members.push_back({m.at("file").get<std::size_t>(), m.at("node").get<std::size_t>(),
                                   m.at("function").get<std::size_t>()});
        }
        round.groups.push_back(std::move(group));
      }
      scheme.rounds.push_back(std::move(round));
    }
    for (const auto& u : doc.at("uncoded")) {
      scheme.uncoded.push_back({u.at("round").get<std::size_t>(), u.at("function").get<std::size_t>(),
                                u.at("file").get<std::size_t>(),
                                u.at("transmitter").get<std::size_t>(),
                                u.at("recipients").get<std::vector<std::size_t>>()});
    }

    const Json& p = doc.at("predicted");
    scheme.predicted.computation = detail::rational_from_json(p.at("r"));
    if (!p.at("L").is_null()) scheme.predicted.communication = detail::rational_from_json(p.at("L"));
    scheme.predicted.total_units = detail::rational_from_json(p.at("total_units"));
    scheme.predicted.exceeds_one = p.at("exceeds_one").get<bool>();
    return scheme;
  } catch (const SchemeFormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemeFormatError(std::string("malformed scheme document: ") + e.what());
  }
}

}  // namespace cdc
