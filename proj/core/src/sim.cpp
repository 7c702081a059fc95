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

#include "cdc/sim.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

#include "cdc/parallel.hpp"
#include "json_util.hpp"

namespace cdc {

Dataset gen_dataset(std::size_t num_files, std::size_t file_bits, std::uint64_t seed) {
  if (num_files == 0) throw std::invalid_argument("dataset needs at least one file");
  if (file_bits == 0 || file_bits % 8 != 0) {
    throw std::invalid_argument("file size D must be a positive multiple of 8 bits");
  }
  Dataset out;
  out.file_bits = file_bits;
  out.seed = seed;
  out.files.reserve(num_files);
  for (std::size_t n = 0; n < num_files; ++n) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32)};
    std::mt19937_64 engine(seq);
    Bytes file(file_bits / 8);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < file.size(); ++i) {
      if (i % 8 == 0) word = engine();
      file[i] = static_cast<std::uint8_t>(word >> (8 * (i % 8)));
    }
    out.files.push_back(std::move(file));
  }
  return out;
}

std::size_t default_iva_bits(const CompiledScheme& scheme) {
  return (scheme.regularity - 1) * 64;
}

std::size_t resolve_iva_bits(const CompiledScheme& scheme, const SimConfig& config) {
  const std::size_t bits = config.iva_bits == 0 ? default_iva_bits(scheme) : config.iva_bits;
  const std::size_t unit = (scheme.regularity - 1) * 8;
  if (bits == 0 || bits % unit != 0) {
    throw std::invalid_argument("IVA width T=" + std::to_string(bits) +
                                " must be a positive multiple of (g-1)*8=" + std::to_string(unit));
  }
  return bits;
}

IvaStore::IvaStore(std::size_t num_functions, std::size_t num_files, std::size_t width_bits)
    : num_functions_(num_functions),
      num_files_(num_files),
      width_bytes_(width_bits / 8),
      slot_(num_functions * num_files, -1) {}

bool IvaStore::has(std::size_t function, std::size_t file) const {
  return function < num_functions_ && file < num_files_ && slot_[function * num_files_ + file] >= 0;
}

std::span<const std::uint8_t> IvaStore::get(std::size_t function, std::size_t file) const {
  if (!has(function, file)) {
    throw SimError("IVA v(" + std::to_string(function) + "," + std::to_string(file) +
                   ") is not held locally");
  }
  auto offset = static_cast<std::size_t>(slot_[function * num_files_ + file]);
  return std::span<const std::uint8_t>(data_).subspan(offset, width_bytes_);
}

void IvaStore::put(std::size_t function, std::size_t file, std::span<const std::uint8_t> value) {
  if (function >= num_functions_ || file >= num_files_) throw SimError("IVA index out of range");
  if (value.size() != width_bytes_) throw SimError("IVA width mismatch");
  auto& slot = slot_[function * num_files_ + file];
  if (slot < 0) {
    slot = static_cast<std::int64_t>(data_.size());
    data_.insert(data_.end(), value.begin(), value.end());
    ++count_;
  } else {
    std::copy(value.begin(), value.end(), data_.begin() + slot);
  }
}

std::vector<IvaStore> run_map(const CompiledScheme& scheme, const Dataset& dataset,
                              const SimConfig& config) {
  if (dataset.num_files() != scheme.num_files()) {
    throw SimError("dataset has " + std::to_string(dataset.num_files()) +
                   " files, scheme expects N=" + std::to_string(scheme.num_files()));
  }
  const std::size_t T = resolve_iva_bits(scheme, config);
  const std::size_t Q = scheme.num_functions();
  const std::size_t K = scheme.num_nodes();
  std::vector<IvaStore> stores(K);
  const std::size_t threads = config.threads == 0 ? default_thread_count() : config.threads;
  parallel_for(K, threads, [&](std::size_t k) {
    IvaStore store(Q, scheme.num_files(), T);
    for (std::size_t n : scheme.placement[k]) {
      if (n >= dataset.num_files()) throw SimError("placement references missing file");
      for (std::size_t q = 0; q < Q; ++q) store.put(q, n, map_digest(q, n, dataset.files[n], T));
    }
    stores[k] = std::move(store);
  });
  return stores;
}

std::size_t TrafficLog::total_bits() const {
  std::size_t total = 0;
  for (const auto& r : records) total += r.bits;
  return total;
}

namespace {

void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

std::span<const std::uint8_t> segment(std::span<const std::uint8_t> iva, std::size_t index,
                                      std::size_t segment_bytes) {
  return iva.subspan(index * segment_bytes, segment_bytes);
}

}  // namespace

ShuffleResult run_shuffle(const CompiledScheme& scheme, const std::vector<IvaStore>& stores) {
  const std::size_t K = scheme.num_nodes();
  if (stores.size() != K) throw SimError("expected one IVA store per node");
  const std::size_t T = stores.empty() ? 0 : stores.front().width_bits();
  const std::size_t g = scheme.regularity;
  const std::size_t segment_bytes = T / 8 / (g - 1);

  ShuffleResult out;
  std::vector<Bytes> payloads;
  auto emit = [&](TrafficRecord record, Bytes payload) {
    for (std::size_t k : record.recipients) {
      if (k >= K) throw SimError("recipient outside node range");
    }
    out.log.records.push_back(std::move(record));
    payloads.push_back(std::move(payload));
  };

  for (const auto& round : scheme.rounds) {
    // Every message of the round is built before anything is decoded.
    for (const auto& group : round.groups) {
      if (group.members.size() != g) throw SimError("group size differs from regularity g");
      for (std::size_t l = 0; l < group.members.size(); ++l) {
        const std::size_t sender = group.members[l].node;
        if (sender >= K) throw SimError("transmitter outside node range");
        Bytes payload(segment_bytes, 0);
        for (const auto& term : group.recipe(l)) {
          if (!stores[sender].has(term.function, term.file)) {
            throw SimError("node " + std::to_string(sender) + " must transmit a segment of v(" +
                           std::to_string(term.function) + "," + std::to_string(term.file) +
                           ") but never mapped it");
          }
          xor_into(payload, segment(stores[sender].get(term.function, term.file), term.segment,
                                    segment_bytes));
        }
        emit({round.index, group.label, sender, segment_bytes * 8, group.recipients(l)},
             std::move(payload));
      }
    }
    for (const auto& u : scheme.uncoded) {
      if (u.round != round.index) continue;
      if (u.transmitter >= K || !stores[u.transmitter].has(u.function, u.file)) {
        throw SimError("node " + std::to_string(u.transmitter) + " must send v(" +
                       std::to_string(u.function) + "," + std::to_string(u.file) +
                       ") but never mapped it");
      }
      auto iva = stores[u.transmitter].get(u.function, u.file);
      emit({round.index, std::nullopt, u.transmitter, T, u.recipients}, Bytes(iva.begin(), iva.end()));
    }
  }

  out.inbox.assign(K, std::vector<Bytes>(out.log.records.size()));
  for (std::size_t r = 0; r < out.log.records.size(); ++r) {
    for (std::size_t k : out.log.records[r].recipients) out.inbox[k][r] = payloads[r];
  }
  return out;
}

bool RunReport::all_decoded() const {
  for (const auto& row : decode_success) {
    if (std::find(row.begin(), row.end(), false) != row.end()) return false;
  }
  return true;
}

RunReport run_reduce(const CompiledScheme& scheme, const Dataset& dataset,
                     const std::vector<IvaStore>& stores, const ShuffleResult& shuffle,
                     const SimConfig& config) {
  const std::size_t K = scheme.num_nodes();
  const std::size_t N = scheme.num_files();
  const std::size_t Q = scheme.num_functions();
  const std::size_t g = scheme.regularity;
  const std::size_t T = resolve_iva_bits(scheme, config);
  const std::size_t iva_bytes = T / 8;
  const std::size_t segment_bytes = iva_bytes / (g - 1);
  if (stores.size() != K || (K > 0 && stores.front().width_bits() != T)) {
    throw SimError("IVA stores do not match the scheme and IVA width");
  }

  // Locate every coded record: (round, label, member index) -> log index,
  // and uncoded records by (function, file).
  std::vector<std::vector<std::vector<std::size_t>>> coded_index(scheme.rounds.size());
  for (std::size_t i = 0; i < scheme.rounds.size(); ++i) {
    coded_index[i].resize(scheme.rounds[i].groups.size());
  }
  std::vector<std::vector<std::int64_t>> uncoded_index(Q, std::vector<std::int64_t>(N, -1));
  {
    // Shuffle emits uncoded records in plan order, rounds ascending.
    std::vector<const UncodedTransmission*> plan;
    for (const auto& round : scheme.rounds) {
      for (const auto& u : scheme.uncoded) {
        if (u.round == round.index) plan.push_back(&u);
      }
    }
    std::size_t next_uncoded = 0;
    std::vector<std::size_t> cursor(scheme.rounds.size(), 0);
    std::vector<std::size_t> member(scheme.rounds.size(), 0);
    for (std::size_t r = 0; r < shuffle.log.records.size(); ++r) {
      const auto& rec = shuffle.log.records[r];
      if (!rec.label) {
        if (next_uncoded >= plan.size()) throw SimError("unmatched uncoded record");
        const UncodedTransmission& u = *plan[next_uncoded++];
        if (u.round != rec.round || u.transmitter != rec.transmitter) {
          throw SimError("uncoded record out of plan order");
        }
        uncoded_index.at(u.function).at(u.file) = static_cast<std::int64_t>(r);
        continue;
      }
      const std::size_t i = rec.round;
      auto& groups = coded_index.at(i);
      groups.at(cursor[i]).push_back(r);
      if (++member[i] == scheme.rounds[i].groups[cursor[i]].members.size()) {
        member[i] = 0;
        ++cursor[i];
      }
    }
  }

  RunReport report;
  report.num_nodes = K;
  report.num_files = N;
  report.num_functions = Q;
  report.iva_bits = T;
  report.output_bits = config.output_bits;
  report.file_bits = dataset.file_bits;
  report.seed = dataset.seed;
  std::size_t stored = 0;
  for (const auto& w : scheme.placement) stored += w.size();
  report.computation_load = Rational(static_cast<std::int64_t>(stored), static_cast<std::int64_t>(N));
  report.total_bits = shuffle.log.total_bits();
  report.messages = shuffle.log.records.size();
  report.coded_messages = static_cast<std::size_t>(std::count_if(
      shuffle.log.records.begin(), shuffle.log.records.end(),
      [](const auto& r) { return r.label.has_value(); }));
  report.communication_load = Rational(static_cast<std::int64_t>(report.total_bits),
                                       static_cast<std::int64_t>(Q * N * T));
  report.total_units =
      Rational(static_cast<std::int64_t>(report.total_bits), static_cast<std::int64_t>(T));
  report.decode_success.assign(K, std::vector<bool>(scheme.rounds.size(), true));
  report.outputs.assign(K, std::vector<ReduceOutput>(scheme.rounds.size()));

  auto fail = [&](std::size_t k, std::size_t i, const std::string& why) {
    report.decode_success[k][i] = false;
    if (config.strict) {
      throw SimError("node " + std::to_string(k) + " round " + std::to_string(i) + ": " + why);
    }
  };

  for (std::size_t i = 0; i < scheme.rounds.size(); ++i) {
    const Round& round = scheme.rounds[i];
    // (node, file) -> (group, member) for this round.
    std::vector<std::pair<std::int64_t, std::size_t>> where(K * N, {-1, 0});
    for (std::size_t gi = 0; gi < round.groups.size(); ++gi) {
      const auto& members = round.groups[gi].members;
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (members[j].node < K && members[j].file < N) {
          where[members[j].node * N + members[j].file] = {static_cast<std::int64_t>(gi), j};
        }
      }
    }

    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t q = round.node_function.at(k);
      const IvaStore& local = stores[k];
      std::vector<Bytes> ivas(N);
      for (std::size_t n = 0; n < N; ++n) {
        if (local.has(q, n)) {
          auto v = local.get(q, n);
          ivas[n].assign(v.begin(), v.end());
          continue;
        }
        Bytes recovered(iva_bytes, 0);
        bool ok = true;
        if (auto [gi, j] = where[k * N + n]; gi >= 0) {
          const auto& group = round.groups[static_cast<std::size_t>(gi)];
          const auto& records = coded_index[i][static_cast<std::size_t>(gi)];
          if (group.members[j].function != q || records.size() != group.members.size()) {
            ok = false;
          }
          for (std::size_t l = 0; ok && l < group.members.size(); ++l) {
            if (l == j) continue;
            const Bytes& payload = shuffle.inbox[k][records[l]];
            if (payload.size() != segment_bytes) {
              ok = false;
              break;
            }
            Bytes piece(payload);
            for (std::size_t t = 0; t < group.members.size(); ++t) {
              if (t == l || t == j) continue;
              const auto& other = group.members[t];
              if (!local.has(other.function, other.file)) {
                ok = false;
                break;
              }
              xor_into(piece, segment(local.get(other.function, other.file),
                                      MulticastGroup::segment_index(t, l), segment_bytes));
            }
            std::copy(piece.begin(), piece.end(),
                      recovered.begin() + static_cast<std::ptrdiff_t>(
                                              MulticastGroup::segment_index(j, l) * segment_bytes));
          }
        } else if (auto r = uncoded_index[q][n]; r >= 0 && !shuffle.inbox[k][static_cast<std::size_t>(r)].empty()) {
          recovered = shuffle.inbox[k][static_cast<std::size_t>(r)];
        } else {
          ok = false;
        }
        if (!ok) {
          fail(k, i, "no way to recover v(" + std::to_string(q) + "," + std::to_string(n) + ")");
        } else if (recovered != map_digest(q, n, dataset.files[n], T)) {
          fail(k, i, "recovered v(" + std::to_string(q) + "," + std::to_string(n) +
                         ") differs from the map output");
        }
        ivas[n] = std::move(recovered);
      }
      report.outputs[k][i] = {q, reduce_digest(q, ivas, config.output_bits)};
    }
  }
  return report;
}

Bytes oracle_reduce(const Dataset& dataset, std::size_t function, std::size_t num_functions,
                    std::size_t iva_bits, std::size_t output_bits) {
  if (function >= num_functions) {
    throw std::invalid_argument("function " + std::to_string(function) + " is not below Q=" +
                                std::to_string(num_functions));
  }
  std::vector<Bytes> ivas;
  ivas.reserve(dataset.num_files());
  for (std::size_t n = 0; n < dataset.num_files(); ++n) {
    ivas.push_back(map_digest(function, n, dataset.files[n], iva_bits));
  }
  return reduce_digest(function, ivas, output_bits);
}

std::vector<Bytes> oracle_outputs(const Dataset& dataset, std::span<const std::size_t> functions,
                                  std::size_t num_functions, std::size_t iva_bits,
                                  std::size_t output_bits) {
  std::vector<Bytes> out;
  out.reserve(functions.size());
  for (std::size_t q : functions) {
    out.push_back(oracle_reduce(dataset, q, num_functions, iva_bits, output_bits));
  }
  return out;
}

Simulation simulate(const CompiledScheme& scheme, const Dataset& dataset, const SimConfig& config) {
  auto stores = run_map(scheme, dataset, config);
  auto shuffle = run_shuffle(scheme, stores);
  Simulation out{run_reduce(scheme, dataset, stores, shuffle, config), std::move(shuffle.log)};

  std::vector<std::size_t> all(scheme.num_functions());
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
  const auto truth = oracle_outputs(dataset, all, scheme.num_functions(), out.report.iva_bits,
                                    config.output_bits);
  bool equal = true;
  for (const auto& row : out.report.outputs) {
    for (const auto& o : row) equal = equal && o.value == truth.at(o.function);
  }
  out.report.oracle_equal = equal;
  return out;
}

namespace {

using detail::Json;

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    throw std::invalid_argument("bad hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  Json decode = Json::array();
  for (const auto& row : report.decode_success) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b);
    decode.push_back(std::move(r));
  }
  Json outputs = Json::array();
  for (const auto& row : report.outputs) {
    Json r = Json::array();
    for (const auto& o : row) r.push_back(Json{{"function", o.function}, {"u", to_hex(o.value)}});
    outputs.push_back(std::move(r));
  }
  Json doc{{"format", "cdc-run/1"},
           {"K", report.num_nodes},
           {"N", report.num_files},
           {"Q", report.num_functions},
           {"T", report.iva_bits},
           {"B", report.output_bits},
           {"D", report.file_bits},
           {"seed", report.seed},
           {"r", detail::rational_json(report.computation_load)},
           {"L", detail::rational_json(report.communication_load)},
           {"total_units", detail::rational_json(report.total_units)},
           {"total_bits", report.total_bits},
           {"messages", report.messages},
           {"coded_messages", report.coded_messages},
           {"all_decoded", report.all_decoded()},
           {"oracle_equal", report.oracle_equal ? Json(*report.oracle_equal) : Json(nullptr)},
           {"decode_success", std::move(decode)},
           {"outputs", std::move(outputs)}};
  return doc.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const Json doc = Json::parse(text);
  if (doc.at("format").get<std::string>() != "cdc-run/1") {
    throw std::invalid_argument("not a run report");
  }
  RunReport r;
  r.num_nodes = doc.at("K").get<std::size_t>();
  r.num_files = doc.at("N").get<std::size_t>();
  r.num_functions = doc.at("Q").get<std::size_t>();
  r.iva_bits = doc.at("T").get<std::size_t>();
  r.output_bits = doc.at("B").get<std::size_t>();
  r.file_bits = doc.at("D").get<std::size_t>();
  r.seed = doc.at("seed").get<std::uint64_t>();
  r.computation_load = detail::rational_from_json(doc.at("r"));
  r.communication_load = detail::rational_from_json(doc.at("L"));
  r.total_units = detail::rational_from_json(doc.at("total_units"));
  r.total_bits = doc.at("total_bits").get<std::size_t>();
  r.messages = doc.at("messages").get<std::size_t>();
  r.coded_messages = doc.at("coded_messages").get<std::size_t>();
  if (!doc.at("oracle_equal").is_null()) r.oracle_equal = doc.at("oracle_equal").get<bool>();
  for (const auto& row : doc.at("decode_success")) {
    r.decode_success.push_back(row.get<std::vector<bool>>());
  }
  for (const auto& row : doc.at("outputs")) {
    std::vector<ReduceOutput> out;
    for (const auto& o : row) {
      out.push_back({o.at("function").get<std::size_t>(), from_hex(o.at("u").get<std::string>())});
    }
    r.outputs.push_back(std::move(out));
  }
  return r;
}

std::string trace_to_csv(const TrafficLog& log) {
  std::ostringstream os;
  os << "round,label,transmitter,bits,recipients\n";
  for (const auto& r : log.records) {
    os << r.round << ',';
    if (r.label) {
      os << *r.label;
    } else {
      os << '-';
    }
    os << ',' << r.transmitter << ',' << r.bits << ',';
    for (std::size_t i = 0; i < r.recipients.size(); ++i) {
      if (i > 0) os << ';';
      os << r.recipients[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cdc
