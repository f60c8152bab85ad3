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

// Scenario files, property checks against ground truth, fuzzing and attack
// drivers. This is the layer the CLI and the C API sit on. The JSON schema
// is described in docs/scenario.md.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aba/catalog.hpp"
#include "aba/protocols.hpp"
#include "aba/simnet.hpp"

namespace aba::scenario {

// A validity property with its parameters, as given to `check` and
// `certificate`: {"validity", "params", "values", "table"}.
struct PropertyRequest {
  SystemParams params;
  ValidityProperty property;
  Domain domain;
};

PropertyRequest parse_property_request(std::string_view json_text,
                                       const std::string &base_dir = ".");

// Per-seed randomization applied by fuzz().
struct FuzzPlan {
  bool random_inputs = false;
  int corrupt = 0;  // capped by the mode's corruption bound
  std::vector<sim::Behavior::Kind> behaviors;
  bool adversarial_delays = false;  // asynchronous mode: slow a random group
};

struct Scenario {
  proto::ProtocolConfig protocol;
  std::string validity;                      // empty when none is given
  std::optional<ValidityProperty> property;  // resolved from `validity`
  sim::NetworkConfig network;
  sim::AdversaryScript adversary;
  std::vector<std::uint64_t> inputs;
  std::uint64_t seed = 1;
  bool allow_excess_corruption = false;
  FuzzPlan fuzz;

  const SystemParams &params() const { return protocol.params; }
  const Domain &domain() const { return protocol.domain; }
};

// `base_dir` resolves relative file references (certificate, table).
Scenario parse_scenario(std::string_view json_text, const std::string &base_dir = ".",
                        const Budget &budget = Budget::from_env());

struct PartyOutcome {
  int party = 0;
  bool corrupted = false;
  std::optional<sim::Decision> decision;
};

struct Checks {
  std::vector<std::string> violations;  // human-readable, empty when clean
  int agreement = 0;
  int validity = 0;
  int integrity = 0;
  int honest_core = 0;
  int core_size = 0;
  int coherence = 0;
  int async_core_below_n_minus_ta = 0;  // reported, not a violation
};

struct RunSummary {
  std::vector<PartyOutcome> parties;
  Checks checks;
  bool all_honest_decided = false;
  bool horizon_exceeded = false;
  sim::Time max_decision_time = 0;
  std::uint64_t messages = 0;
  std::string trace_hash;  // empty when the trace was not kept
  std::string trace_jsonl;

  bool clean() const { return checks.violations.empty(); }
  std::string to_json(const Scenario &scenario) const;
};

RunSummary run_scenario(const Scenario &scenario, bool keep_trace = true);

// The scenario run with every seed in [first_seed, first_seed + seeds) after
// applying its fuzz plan.
Scenario fuzz_instance(const Scenario &base, std::uint64_t seed);

struct FuzzSummary {
  int runs = 0;
  int decided_runs = 0;
  int violating_runs = 0;
  Checks totals;
  std::vector<std::pair<std::uint64_t, std::string>> examples;  // first few
  sim::Time max_decision_time = 0;

  double decided_fraction() const {
    return runs == 0 ? 0.0 : static_cast<double>(decided_runs) / runs;
  }
  std::string to_json() const;
};

FuzzSummary fuzz(const Scenario &base, int seeds, std::uint64_t first_seed = 1);

struct AttackOutcome {
  std::string report_json;
  bool violation = false;  // the attack exhibited a disagreement
};

// {"attack": "split_brain" | "triple_partition" | "ring", "protocol", "params",
//  "values", "inputs1", "inputs2", "r", "seed", "delta", "horizon", ...}
AttackOutcome run_attack(std::string_view json_text, const std::string &base_dir = ".");

}  // namespace aba::scenario
