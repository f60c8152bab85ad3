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

// Protocol state machines runnable on the simulator.
//
//   rbc        reliable broadcast from one designated sender
//   bin-ba     network-agnostic binary agreement
//   acs        agreement on a core set of (party, value) pairs
//   universal  ACS followed by a similarity-certificate lookup
//   ba-star    shared-random-value protocol that never outputs a unanimous input
//
// Non-secure fixtures used by the attack demonstrations:
//
//   constant   decides a fixed value at time 0
//   local-min  broadcasts its input, decides the minimum it heard after 2 delta
//   majority3  one round, decides the majority of heard inputs (ties: own input)
//   flood-min  min-flooding for a fixed number of rounds

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aba/simnet.hpp"
#include "aba/validity.hpp"

namespace aba::proto {

struct ProtocolConfig {
  std::string name = "universal";
  SystemParams params;
  Domain domain = Domain::numeric(2);
  sim::Time delta = 10;  // synchronous delay bound known to the protocol
  int sender = 0;        // rbc
  std::shared_ptr<const SimilarityCertificate> certificate;  // universal
  // Refuse parameters outside the resilience bound. Attack experiments turn
  // this off to run protocols where they are known to break.
  bool check_preconditions = true;
  std::optional<std::uint64_t> shared_value;  // ba-star: pin s instead of the coin
  std::uint64_t constant = 0;                 // constant
  int flood_rounds = 0;                       // flood-min; 0 means ts + 1
};

// Throws kConfig for unknown names or inconsistent configuration.
sim::ProcessFactory make_protocol(const ProtocolConfig &config);

const std::vector<std::string> &protocol_names();
bool is_fixture(const std::string &name);

// Two (n - ts)-quorums share at least ta + 1 parties.
bool quorums_intersect(const SystemParams &params);

// Local time at which ACS starts its first batch of binary agreements.
inline sim::Time acs_core_time(sim::Time delta) { return 4 * delta; }

// Length of the signed synchronous phase of binary agreement; zero without
// a PKI, where the coin-based loop alone suffices.
sim::Time sync_phase_duration(const SystemParams &params, sim::Time delta);

// Output of the synchronous phase from the broadcast vector: c0 and c1 count
// senders whose broadcast settled on 0 and 1.
int sync_phase_output(int c0, int c1, int ta, int own);

// Coin instance that ba-star draws s from (round 0).
inline constexpr std::uint64_t kSharedValueInstance = 0x5a5a5a5a5a5a5a5aULL;

// 64-bit fixed point in [0, 1).
double fixed_to_double(std::uint64_t value);
std::uint64_t double_to_fixed(double value);

}  // namespace aba::proto
