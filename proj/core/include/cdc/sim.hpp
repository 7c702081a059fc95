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

// Bit-exact execution of a compiled scheme over a lossless broadcast medium.
//
// Map: node k computes v(q, n) for every function q and every stored file n.
// Shuffle: per round, every group member transmits its XOR recipe; the log
// records each message with its bit length and recipients. Reduce: each node
// cancels the segments it can compute itself, reassembles the missing IVAs,
// and digests v(q, 0..N-1) into the output u_q.

#ifndef CDC_SIM_HPP_
#define CDC_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/compile.hpp"
#include "cdc/digest.hpp"
#include "cdc/rational.hpp"

namespace cdc {

struct Dataset {
  std::size_t file_bits = 0;
  std::uint64_t seed = 0;
  std::vector<Bytes> files;

  std::size_t num_files() const { return files.size(); }
};

// N files of D bits each, deterministic in (N, D, seed). D must be a
// positive multiple of 8 and N positive; throws std::invalid_argument.
Dataset gen_dataset(std::size_t num_files, std::size_t file_bits, std::uint64_t seed);

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimConfig {
  // IVA width T in bits; 0 selects (g-1)*64.
  std::size_t iva_bits = 0;
  // Reduce output width B in bits.
  std::size_t output_bits = 256;
  // Map workers; 0 selects default_thread_count().
  std::size_t threads = 0;
  // Throw SimError on the first decode failure instead of recording it.
  bool strict = true;
};

// (g-1) * 64.
std::size_t default_iva_bits(const CompiledScheme& scheme);
// Resolves iva_bits = 0 and checks (g-1)*8 divides T.
std::size_t resolve_iva_bits(const CompiledScheme& scheme, const SimConfig& config);

// IVAs held by one node: a dense (function, file) table of fixed-width
// entries.
class IvaStore {
 public:
  IvaStore() = default;
  IvaStore(std::size_t num_functions, std::size_t num_files, std::size_t width_bits);

  bool has(std::size_t function, std::size_t file) const;
  // Throws SimError when the entry is absent.
  std::span<const std::uint8_t> get(std::size_t function, std::size_t file) const;
  void put(std::size_t function, std::size_t file, std::span<const std::uint8_t> value);

  std::size_t width_bits() const { return width_bytes_ * 8; }
  std::size_t size() const { return count_; }

 private:
  std::size_t num_functions_ = 0;
  std::size_t num_files_ = 0;
  std::size_t width_bytes_ = 0;
  std::size_t count_ = 0;
  std::vector<std::int64_t> slot_;
  std::vector<std::uint8_t> data_;
};

// Throws SimError if the dataset size does not match the scheme.
std::vector<IvaStore> run_map(const CompiledScheme& scheme, const Dataset& dataset,
                              const SimConfig& config = {});

struct TrafficRecord {
  std::size_t round = 0;
  // Group label; empty for uncoded whole-IVA transmissions.
  std::optional<Label> label;
  std::size_t transmitter = 0;
  std::size_t bits = 0;
  std::vector<std::size_t> recipients;
  friend bool operator==(const TrafficRecord&, const TrafficRecord&) = default;
};

struct TrafficLog {
  std::vector<TrafficRecord> records;
  std::size_t total_bits() const;
};

struct ShuffleResult {
  TrafficLog log;
  // inbox[k][r]: payload of log record r as received by node k; empty if
  // k was not a recipient.
  std::vector<std::vector<Bytes>> inbox;
};

// Materializes every message of every round. Throws SimError if a
// transmitter lacks an IVA its recipe needs.
ShuffleResult run_shuffle(const CompiledScheme& scheme, const std::vector<IvaStore>& stores);

struct ReduceOutput {
  std::size_t function = 0;
  Bytes value;
  friend bool operator==(const ReduceOutput&, const ReduceOutput&) = default;
};

struct RunReport {
  std::size_t num_nodes = 0;
  std::size_t num_files = 0;
  std::size_t num_functions = 0;
  std::size_t iva_bits = 0;
  std::size_t output_bits = 0;
  std::size_t file_bits = 0;
  std::uint64_t seed = 0;
  // sum_k |W_k| / N.
  Rational computation_load;
  // Shuffled bits / (Q*N*T).
  Rational communication_load;
  // Shuffled bits / T.
  Rational total_units;
  std::size_t total_bits = 0;
  std::size_t messages = 0;
  std::size_t coded_messages = 0;
  // decode_success[k][i]: node k recovered every IVA of its round-i function.
  std::vector<std::vector<bool>> decode_success;
  // outputs[k][i]: node k's reduce output for round i.
  std::vector<std::vector<ReduceOutput>> outputs;
  // Set by simulate(): every output equals the centralized oracle.
  std::optional<bool> oracle_equal;

  bool all_decoded() const;
};

// Decodes, verifies every recovered IVA against the map function applied
// to the dataset, and digests the outputs.
RunReport run_reduce(const CompiledScheme& scheme, const Dataset& dataset,
                     const std::vector<IvaStore>& stores, const ShuffleResult& shuffle,
                     const SimConfig& config = {});

// Centralized reference: v(q, n) for all n computed directly, then
// digested. Throws std::invalid_argument if q >= Q.
Bytes oracle_reduce(const Dataset& dataset, std::size_t function, std::size_t num_functions,
                    std::size_t iva_bits, std::size_t output_bits);

// oracle_reduce for each listed function, in order.
std::vector<Bytes> oracle_outputs(const Dataset& dataset, std::span<const std::size_t> functions,
                                  std::size_t num_functions, std::size_t iva_bits,
                                  std::size_t output_bits);

struct Simulation {
  RunReport report;
  TrafficLog log;
};

// Map, shuffle, reduce, then compare every output with oracle_reduce.
Simulation simulate(const CompiledScheme& scheme, const Dataset& dataset,
                    const SimConfig& config = {});

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);
// "round,label,transmitter,bits,recipients" with ';'-joined recipients;
// uncoded records carry label "-".
std::string trace_to_csv(const TrafficLog& log);

}  // namespace cdc

#endif  // CDC_SIM_HPP_
