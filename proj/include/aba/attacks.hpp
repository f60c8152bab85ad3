/*
 * Copyright (c) 2026, The aba authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

// Executable versions of the indistinguishability arguments behind the
// resilience bounds: partitioned executions and the six-party ring cover.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aba/protocols.hpp"
#include "aba/simnet.hpp"

namespace aba::attack {

using sim::NodeKey;

// Parties 0..ts-1 form L, the next ta parties M, the last ts parties R.
struct PartitionLayout {
  std::vector<int> left, middle, right;

  // Requires n == 2 ts + ta.
  static PartitionLayout standard(const SystemParams &params);
};

// Node instances P(k, i, j) with k in {1, 2}, i in {1, 2, 3} and
// j in [0, 2r + 1]: 4(r + 1) copies of each of the three parties, half of
// them on inputs 1 (row k = 1) and half on inputs 2. Party id is i - 1.
class RingLayout {
 public:
  explicit RingLayout(int r);

  int r() const { return r_; }
  NodeKey node(int k, int i, int j) const;
  // Inverse of node(); {k, i, j}.
  std::array<int, 3> coords(NodeKey key) const;

  std::vector<NodeKey> nodes() const;
  std::vector<std::pair<NodeKey, NodeKey>> channels() const;
  // The neighbor of `key` that stands for `party` (key itself for its own party).
  NodeKey neighbor(NodeKey key, int party) const;

  // Every node has degree 2 and the channel graph is one cycle over all nodes.
  bool is_single_cycle() const;

 private:
  int r_;
};

struct AttackSetup {
  proto::ProtocolConfig protocol;  // params, delta and protocol name
  std::vector<std::uint64_t> inputs1;
  std::vector<std::uint64_t> inputs2;
  std::uint64_t seed = 1;
  sim::Time horizon = 200000;
};

struct ExecutionReport {
  std::string label;
  std::vector<sim::NodeOutcome> nodes;  // honest, non-crashed nodes
  bool undecided = false;
  std::string trace_hash;
};

struct GroupView {
  std::vector<NodeKey> members;
  std::vector<std::optional<std::uint64_t>> decisions;

  bool all_decided() const;
  bool consistent() const;  // decided members agree
  std::optional<std::uint64_t> value() const;  // when decided and consistent
};

struct SplitBrainReport {
  SystemParams params;
  // a: canonical, R crashed, inputs1. b: canonical, L crashed, inputs2.
  // c: L on inputs1 and R on inputs2, cross traffic held. d: canonical inputs1.
  std::vector<ExecutionReport> executions;
  GroupView left, right;  // from execution c
  bool left_matches_a = false;
  bool right_matches_b = false;
  bool cross_disagreement = false;
  bool within_group_disagreement = false;  // in any execution

  std::string to_json() const;
};

struct TriplePartitionReport {
  SystemParams params;
  bool degenerate = false;  // ta == 0: the split-brain run with no middle
  // Control run: one input vector, every channel delivers after delta.
  ExecutionReport control;
  std::vector<bool> replicas_identical;  // per middle party
  bool control_identical = true;
  ExecutionReport attack;
  GroupView left_side, right_side;  // L plus copy 1 of M, R plus copy 2
  bool cross_disagreement = false;
  bool within_group_disagreement = false;

  std::string to_json() const;
};

struct RingReport {
  SystemParams params;
  int r = 0;
  std::size_t node_count = 0;
  bool single_cycle = false;
  std::vector<std::pair<NodeKey, std::optional<std::uint64_t>>> decisions;
  std::vector<bool> adjacent_equal;  // per channel, in channels() order
  bool some_adjacent_unequal = false;
  // fidelity[k-1][i-1]: P(k, i, r) saw exactly what P_i saw in the
  // canonical run on inputs k, through time r * delta.
  std::array<std::array<bool, 3>, 2> fidelity{};
  bool all_fidelity = false;
  std::array<ExecutionReport, 2> canonical;
  std::string trace_hash;

  std::string to_json() const;
};

SplitBrainReport split_brain(const AttackSetup &setup);
TriplePartitionReport triple_partition(const AttackSetup &setup);
// Requires n = 3, ts = 1 and no setup.
RingReport ring_attack(const AttackSetup &setup, int r);

}  // namespace aba::attack
