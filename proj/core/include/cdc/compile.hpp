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

// Compiles a g-regular PDA and a reduce-function assignment into a complete
// cascaded coded-shuffle plan.
//
// Node k stores file n iff the PDA has a star at (n, k). With the window
// assignment every reduce function is replicated on s nodes: there are
// Q = K/gcd(K,s) functions and node k computes the e = s/gcd(K,s)
// consecutive ids <k*e>_Q .. <k*e+e-1>_Q. The shuffle runs in e rounds; in
// round i node k works on function <k*e+i>_Q, and every label u of the PDA
// yields one multicast group among the g nodes holding u.
//
// Inside a group with members (n_1,k_1) .. (n_g,k_g), sorted by column,
// member j misses the IVA v(q_j, n_j) and every other member stores file
// n_j. That IVA is cut into g-1 equal segments, one per other member in
// column order; member l transmits the XOR of the segments it owns across
// all the other members' IVAs.

#ifndef CDC_COMPILE_HPP_
#define CDC_COMPILE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/pda.hpp"
#include "cdc/rational.hpp"

namespace cdc {

using FileSet = std::vector<std::size_t>;

struct FunctionAssignment {
  // Q: number of distinct reduce functions.
  std::size_t num_functions = 0;
  // s; set only for window assignments.
  std::optional<std::size_t> replication;
  // e: functions per node, equal to the number of shuffle rounds.
  std::size_t per_node = 0;
  // node_functions[k][i] is the function node k reduces in round i.
  std::vector<std::vector<std::size_t>> node_functions;

  bool is_window() const { return replication.has_value(); }
  std::size_t num_nodes() const { return node_functions.size(); }

  friend bool operator==(const FunctionAssignment&, const FunctionAssignment&) = default;
};

// Throws std::invalid_argument unless 1 <= s <= K.
FunctionAssignment window_assignment(std::size_t num_nodes, std::size_t replication);

// One function per node, single round. Ids may repeat; the set of distinct
// ids must be exactly {0, .., Q-1}.
FunctionAssignment custom_assignment(std::vector<std::size_t> per_node);

struct GroupMember {
  std::size_t file = 0;
  std::size_t node = 0;
  // Reduce function the node works on in this round.
  std::size_t function = 0;
  friend bool operator==(const GroupMember&, const GroupMember&) = default;
};

// One segment of one IVA inside a coded message.
struct SegmentRef {
  std::size_t function = 0;
  std::size_t file = 0;
  std::size_t segment = 0;
  friend bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

struct MulticastGroup {
  Label label = 0;
  // Ascending node (column) order.
  std::vector<GroupMember> members;

  // Index of the segment of member `target`'s IVA that member
  // `transmitter` carries. Requires target != transmitter.
  static std::size_t segment_index(std::size_t target, std::size_t transmitter) {
    return transmitter < target ? transmitter : transmitter - 1;
  }

  // Terms XORed into the message of member `transmitter`, in member order.
  std::vector<SegmentRef> recipe(std::size_t transmitter) const;
  // Nodes receiving the message of member `transmitter`.
  std::vector<std::size_t> recipients(std::size_t transmitter) const;

  friend bool operator==(const MulticastGroup&, const MulticastGroup&) = default;
};

struct Round {
  std::size_t index = 0;
  // node_function[k]: function reduced by node k in this round.
  std::vector<std::size_t> node_function;
  // One group per label, ordered by label. Empty when the uncoded fallback
  // is in effect.
  std::vector<MulticastGroup> groups;
  friend bool operator==(const Round&, const Round&) = default;
};

// Whole-IVA transmission used by the uncoded fallback.
struct UncodedTransmission {
  std::size_t round = 0;
  std::size_t function = 0;
  std::size_t file = 0;
  std::size_t transmitter = 0;
  std::vector<std::size_t> recipients;
  friend bool operator==(const UncodedTransmission&, const UncodedTransmission&) = default;
};

struct PredictedLoads {
  // r = K*Z/N.
  Rational computation;
  // Shuffled bits over Q*N*T. Uncapped; absent for custom assignments.
  std::optional<Rational> communication;
  // Shuffled bits over T, i.e. the number of IVAs' worth of traffic.
  Rational total_units;
  // Coded communication load strictly above 1.
  bool exceeds_one = false;
  friend bool operator==(const PredictedLoads&, const PredictedLoads&) = default;
};

struct CompileOptions {
  // Send whole IVAs instead of coded messages when the coded plan would
  // move at least Q*N IVAs' worth of data.
  bool uncoded_fallback = false;
};

struct CompiledScheme {
  Pda pda;
  std::size_t regularity = 0;
  // placement[k]: files stored by node k, ascending.
  std::vector<FileSet> placement;
  FunctionAssignment assignment;
  std::vector<Round> rounds;
  std::vector<UncodedTransmission> uncoded;
  bool fallback_requested = false;
  bool fallback_applied = false;
  PredictedLoads predicted;

  std::size_t num_nodes() const { return pda.num_nodes(); }
  std::size_t num_files() const { return pda.num_files(); }
  std::size_t num_functions() const { return assignment.num_functions; }

  friend bool operator==(const CompiledScheme&, const CompiledScheme&) = default;
};

enum class CompileErrorKind { kNonRegular, kRegularityTooLow, kAssignmentSize };

class CompileError : public std::runtime_error {
 public:
  CompileError(CompileErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  CompileErrorKind kind() const { return kind_; }

 private:
  CompileErrorKind kind_;
};

// W_k = { n : p(n,k) is a star }.
std::vector<FileSet> placement_from_pda(const Pda& pda);

// Validates the PDA (PdaError on failure), requires g >= 2 and an
// assignment over exactly K nodes.
CompiledScheme compile(const Pda& pda, const FunctionAssignment& assignment,
                       CompileOptions options = {});

// Closed-form loads from the scheme's parameters and plan shape.
PredictedLoads predicted_loads(const CompiledScheme& scheme);

}  // namespace cdc

#endif  // CDC_COMPILE_HPP_
