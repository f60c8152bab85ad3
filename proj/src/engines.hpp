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

// Building blocks shared by the protocol processes. Each engine owns the
// state of many instances and is driven by its host process.

#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>

#include "aba/protocols.hpp"
#include "aba/wire.hpp"

namespace aba::proto {

using sim::Bytes;
using sim::Context;
using sim::Time;

// Reliable broadcast; the instance id is the sender's party id.
class RbcEngine {
 public:
  using DeliverFn = std::function<void(Context &, int sender, std::uint64_t value)>;

  RbcEngine(const SystemParams &params, DeliverFn deliver);

  void broadcast(Context &ctx, std::uint64_t value);
  void handle(Context &ctx, int src, const wire::Header &h, wire::Reader &r);

 private:
  struct Instance {
    bool echoed = false;
    bool readied = false;
    bool delivered = false;
    std::map<std::uint64_t, std::set<int>> echoes;
    std::map<std::uint64_t, std::set<int>> readies;
  };

  void echo(Context &ctx, int sender, Instance &inst, std::uint64_t value,
            const Bytes &sig);
  void ready(Context &ctx, int sender, Instance &inst, std::uint64_t value);
  bool signed_by_sender(Context &ctx, int sender, std::uint64_t value,
                        const Bytes &sig) const;

  SystemParams params_;
  DeliverFn deliver_;
  int echo_quorum_;
  int deliver_quorum_;
  std::map<int, Instance> instances_;
};

// Binary agreement instances keyed by a 64-bit id.
class BaEngine {
 public:
  using DecideFn = std::function<void(Context &, std::uint64_t id, int bit)>;

  static constexpr std::uint64_t kTimerBit = 1ULL << 62;

  BaEngine(const SystemParams &params, Time delta, DecideFn decide);

  // `sync_phase` runs the signed synchronous phase first; every honest
  // party must start the instance at the same local time for it to help.
  void start(Context &ctx, std::uint64_t id, int bit, bool sync_phase);
  void handle(Context &ctx, int src, const wire::Header &h, wire::Reader &r);
  bool handle_timer(Context &ctx, std::uint64_t tag);

  bool started(std::uint64_t id) const;
  std::optional<int> decision(std::uint64_t id) const;
  std::uint32_t round(std::uint64_t id) const;

 private:
  struct Round {
    std::array<std::set<int>, 2> bval;
    std::array<bool, 2> bval_sent{false, false};
    int first_bin = -1;
    std::uint8_t bin = 0;  // bit b set once b is a bin value
    bool aux_sent = false;
    std::map<int, int> aux;
  };
  struct Instance {
    bool started = false;
    bool looping = false;  // in the coin-based loop
    bool halted = false;
    int input = 0;
    int est = 0;
    std::uint32_t round = 0;
    std::optional<int> decided;
    bool term_sent = false;
    std::array<std::set<int>, 2> term;
    std::map<std::uint32_t, Round> rounds;
    Time sync_start = 0;
    std::map<int, std::uint8_t> settled;  // sender -> bitmask of accepted bits
  };

  void send_bval(Context &ctx, std::uint64_t id, Instance &inst,
                 std::uint32_t r, int b);
  void send_aux(Context &ctx, std::uint64_t id, Instance &inst,
                std::uint32_t r, int b);
  void enter_loop(Context &ctx, std::uint64_t id, Instance &inst, int est);
  void try_advance(Context &ctx, std::uint64_t id, Instance &inst);
  void on_term(Context &ctx, std::uint64_t id, Instance &inst, int src, int b);
  void on_signed(Context &ctx, std::uint64_t id, Instance &inst, int src,
                 wire::Reader &r);
  void decide(Context &ctx, std::uint64_t id, Instance &inst, int b);

  SystemParams params_;
  Time delta_;
  DecideFn decide_;
  std::map<std::uint64_t, Instance> instances_;
};

// Agreement on a core set. Inputs and outputs are input-value indices.
class AcsEngine {
 public:
  using OutputFn = std::function<void(Context &, const InputConfiguration &core)>;

  static constexpr std::uint64_t kCoreTimer = 1ULL << 61;

  AcsEngine(const SystemParams &params, int value_count, Time delta,
            OutputFn output);

  void start(Context &ctx, int input);
  void handle(Context &ctx, int src, const Bytes &payload);
  void handle_timer(Context &ctx, std::uint64_t tag);

 private:
  std::uint64_t id(int epoch, int sender, int value) const;
  void on_deliver(Context &ctx, int sender, std::uint64_t value);
  void on_decide(Context &ctx, std::uint64_t id, int bit);
  void finish_epoch(Context &ctx, int epoch);

  SystemParams params_;
  int value_count_;
  Time delta_;
  OutputFn output_;
  RbcEngine rbc_;
  BaEngine ba_;
  std::map<int, int> delivered_;  // sender -> value
  int epoch_ = 0;
  std::array<std::map<std::pair<int, int>, int>, 3> decided_;
  std::set<int> ones_;   // epoch 2: senders with an instance decided 1
  bool zero_voted_ = false;
  bool done_ = false;
};

}  // namespace aba::proto
