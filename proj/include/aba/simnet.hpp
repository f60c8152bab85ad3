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

// Deterministic discrete-event simulator for message-passing protocols.
//
// A run is a pure function of (factory, params, network, adversary, inputs,
// seed): the event queue is ordered by (time, insertion sequence), all
// randomness flows from the seed, and there is no wall-clock input.

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aba/validity.hpp"

namespace aba::sim {

using Time = std::int64_t;
using Bytes = std::string;

enum class NetworkMode { kSynchronous, kAsynchronous };

const char *to_string(NetworkMode mode);

struct NetworkConfig {
  NetworkMode mode = NetworkMode::kSynchronous;
  Time delta = 10;        // synchronous delay bound
  Time horizon = 200000;  // last simulated instant
  // Synchronous only: every message takes exactly delta.
  bool exact_delta = false;
  // Asynchronous default delays are drawn from [1, async_max_delay].
  Time async_max_delay = 30;

  void validate() const;
};

struct NodeKey {
  int party = 0;
  int replica = 0;  // 0 for the real instance, > 0 for attack copies
  auto operator<=>(const NodeKey &) const = default;
};

enum class EventKind { kSend, kDeliver, kTimer, kCoin, kSign, kDecide, kCrash };

const char *to_string(EventKind kind);

struct TraceEvent {
  Time t = 0;
  EventKind kind = EventKind::kSend;
  NodeKey node;
  NodeKey peer;             // SEND: receiver, DELIVER: sender
  std::uint64_t msg = 0;    // message id for SEND / DELIVER
  std::string data;         // hex payload, decided value, coin value, ...
};

class ExecutionTrace {
 public:
  void append(TraceEvent event) { events_.push_back(std::move(event)); }
  const std::vector<TraceEvent> &events() const { return events_; }

  // One JSON object per line: {"t","kind","party","replica","detail"}.
  std::string to_jsonl() const;
  // SHA-256 of to_jsonl(), hex encoded.
  std::string hash() const;

  // Hash of what a node saw and did up to `until`, with peers reduced to
  // party ids and message ids dropped; events sharing a timestamp are
  // sorted. Two nodes with equal views were in equal states.
  std::string view_digest(NodeKey node, Time until) const;

 private:
  std::vector<TraceEvent> events_;
};

std::string sha256_hex(std::string_view data);
std::string to_hex(std::string_view bytes);

struct Decision {
  std::uint64_t value = 0;
  std::string detail;  // protocol-specific, e.g. an encoded ACS core
  Time at = 0;
  bool same_outcome(const Decision &other) const {
    return value == other.value && detail == other.detail;
  }
};

// Handed to protocol handlers. All effects are applied in call order.
class Context {
 public:
  virtual ~Context() = default;

  virtual Time now() const = 0;
  virtual int self() const = 0;
  virtual int party_count() const = 0;
  virtual const SystemParams &params() const = 0;

  virtual void send(int dst_party, Bytes payload) = 0;
  void broadcast(const Bytes &payload) {
    for (int p = 0; p < party_count(); ++p) send(p, payload);
  }
  virtual void decide(std::uint64_t value, std::string detail = {}) = 0;
  virtual void set_timer(Time delay, std::uint64_t tag) = 0;

  // Ideal common coin: same value for every caller of (instance, round).
  virtual std::uint64_t coin(std::uint64_t instance, std::uint64_t round) = 0;
  // Ideal signatures; throw kSetupUnavailable without a PKI.
  virtual Bytes sign(const Bytes &message) = 0;
  virtual bool verify(int party, const Bytes &message,
                      const Bytes &signature) = 0;
  // Private per-party random tape (shared by replicas of a party).
  virtual std::uint64_t random() = 0;
};

class Process {
 public:
  virtual ~Process() = default;
  virtual void on_start(Context &ctx) = 0;
  virtual void on_message(Context &ctx, int src_party, const Bytes &payload) = 0;
  virtual void on_timer(Context &, std::uint64_t /*tag*/) {}
};

struct NodeSetup {
  NodeKey key;
  std::uint64_t input = 0;
  const SystemParams *params = nullptr;
};

using ProcessFactory = std::function<std::unique_ptr<Process>(const NodeSetup &)>;

struct Behavior {
  enum class Kind { kCrashAt, kFollowWithInput, kEquivocate, kSilentTo };
  Kind kind = Kind::kCrashAt;
  Time crash_at = 0;
  std::uint64_t input = 0;    // follow: substituted input; equivocate: input A
  std::uint64_t input_b = 0;  // equivocate: input B
  std::vector<int> parties;   // equivocate: receivers of A; silent: muted set

  static Behavior crash(Time at) { return {Kind::kCrashAt, at, 0, 0, {}}; }
  static Behavior follow(std::uint64_t input) {
    return {Kind::kFollowWithInput, 0, input, 0, {}};
  }
  static Behavior equivocate(std::uint64_t a, std::uint64_t b,
                             std::vector<int> a_receivers) {
    return {Kind::kEquivocate, 0, a, b, std::move(a_receivers)};
  }
  static Behavior silent_to(std::vector<int> muted) {
    return {Kind::kSilentTo, 0, 0, 0, std::move(muted)};
  }
};

// Delivery rule for messages between parties. Empty `from`/`to` match any.
struct DeliveryRule {
  enum class Action { kFixed, kUniform, kHold };
  std::vector<int> from;
  std::vector<int> to;
  Action action = Action::kFixed;
  Time lo = 1;
  Time hi = 1;
  Time release_time = 0;  // kHold: never released before this instant
};

struct AdversaryScript {
  std::map<int, Behavior> corrupted;
  std::vector<DeliveryRule> rules;  // first match wins
};

// Explicit node set and routing, used by attack scenarios that replicate
// parties or rewire channels.
class Wiring {
 public:
  struct NodeSpec {
    NodeKey key;
    std::uint64_t input = 0;
  };
  struct Route {
    enum class Kind { kDefault, kFixed, kHold };
    NodeKey dst;
    Kind kind = Kind::kDefault;
    Time delay = 0;
  };

  virtual ~Wiring() = default;
  virtual std::vector<NodeSpec> nodes() const = 0;
  // An empty result drops the message.
  virtual std::vector<Route> route(NodeKey src, int dst_party) const = 0;
};

struct RunOptions {
  bool record_trace = true;
  const Wiring *wiring = nullptr;
  // Held messages are released once these nodes have all decided (or
  // crashed); empty means every honest node.
  std::vector<NodeKey> hold_watch;
  bool enforce_corruption_budget = true;
};

struct NodeOutcome {
  NodeKey key;
  bool corrupted = false;
  bool crashed = false;
  std::optional<Decision> decision;
};

struct RunResult {
  ExecutionTrace trace;
  std::vector<NodeOutcome> nodes;
  bool horizon_exceeded = false;  // some honest node never decided
  Time end_time = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_undelivered = 0;

  const NodeOutcome *find(NodeKey key) const;
};

// `inputs[p]` is party p's input; ignored when a wiring supplies nodes.
RunResult run(const ProcessFactory &factory, const SystemParams &params,
              const NetworkConfig &network, const AdversaryScript &adversary,
              const std::vector<std::uint64_t> &inputs, std::uint64_t seed,
              const RunOptions &options = {});

// Synchronous, exact-delta delivery, the given parties crash at time 0.
std::pair<NetworkConfig, AdversaryScript> canonical_schedule(
    const std::vector<int> &crashed, Time delta = 10, Time horizon = 200000);

// Intra-group messages take `intra_delay`; cross-group messages are held
// until release_time and until the watched nodes decided.
std::vector<DeliveryRule> async_partition_schedule(
    const std::vector<std::vector<int>> &groups, Time release_time,
    Time intra_delay = 1);

// Value of the ideal common coin for (instance, round) under `seed`.
std::uint64_t common_coin(std::uint64_t seed, std::uint64_t instance,
                          std::uint64_t round);

// `count` instances of `party` with replica tags first_tag, first_tag + 1, ...
std::vector<NodeKey> replicate(int party, int count, int first_tag = 1);

// splitmix64 finalizer; used to derive independent streams from a seed.
std::uint64_t mix64(std::uint64_t x);

}  // namespace aba::sim
