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

#include "aba/simnet.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <unordered_set>

#include <openssl/evp.h>

#include <json.hpp>

namespace aba::sim {

const char *to_string(NetworkMode mode) {
  return mode == NetworkMode::kSynchronous ? "sync" : "async";
}

const char *to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kSend: return "SEND";
    case EventKind::kDeliver: return "DELIVER";
    case EventKind::kTimer: return "TIMER";
    case EventKind::kCoin: return "COIN";
    case EventKind::kSign: return "SIGN";
    case EventKind::kDecide: return "DECIDE";
    case EventKind::kCrash: return "CRASH";
  }
  return "?";
}

void NetworkConfig::validate() const {
  if (delta <= 0 || horizon <= 0 || async_max_delay <= 0)
    throw Error(ErrorCode::kConfig, "delta, horizon and delays must be positive");
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t common_coin(std::uint64_t seed, std::uint64_t instance,
                          std::uint64_t round) {
  return mix64(mix64(mix64(seed ^ 0xc014c014c014c014ULL) ^ instance) ^ round);
}

std::vector<NodeKey> replicate(int party, int count, int first_tag) {
  std::vector<NodeKey> out;
  for (int i = 0; i < count; ++i) out.push_back({party, first_tag + i});
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  return to_hex(std::string_view(reinterpret_cast<const char *>(digest), length));
}

std::string to_hex(std::string_view bytes) {
  static const char *digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace

namespace {

std::string detail_of(const TraceEvent &e) {
  switch (e.kind) {
    case EventKind::kSend:
      return "to=" + std::to_string(e.peer.party) + " msg=" +
             std::to_string(e.msg) + " data=" + e.data;
    case EventKind::kDeliver:
      return "from=" + std::to_string(e.peer.party) + "." +
             std::to_string(e.peer.replica) + " msg=" + std::to_string(e.msg) +
             " data=" + e.data;
    case EventKind::kTimer: return "tag=" + e.data;
    case EventKind::kCoin: return "coin=" + e.data;
    case EventKind::kSign: return "data=" + e.data;
    case EventKind::kDecide: return "value=" + e.data;
    case EventKind::kCrash: return "";
  }
  return "";
}

}  // namespace

std::string ExecutionTrace::to_jsonl() const {
  std::string out;
  for (const auto &e : events_) {
    out += "{\"t\":";
    out += std::to_string(e.t);
    out += ",\"kind\":\"";
    out += to_string(e.kind);
    out += "\",\"party\":";
    out += std::to_string(e.node.party);
    out += ",\"replica\":";
    out += std::to_string(e.node.replica);
    out += ",\"detail\":";
    out += nlohmann::json(detail_of(e)).dump();
    out += "}\n";
  }
  return out;
}

std::string ExecutionTrace::hash() const { return sha256_hex(to_jsonl()); }

std::string ExecutionTrace::view_digest(NodeKey node, Time until) const {
  std::vector<std::pair<Time, std::string>> lines;
  for (const auto &e : events_) {
    if (e.node != node || e.t > until) continue;
    std::string line = to_string(e.kind);
    line += '|';
    if (e.kind == EventKind::kSend || e.kind == EventKind::kDeliver)
      line += std::to_string(e.peer.party);
    line += '|';
    line += e.data;
    lines.emplace_back(e.t, std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string joined;
  for (const auto &[t, line] : lines) {
    joined += std::to_string(t);
    joined += ' ';
    joined += line;
    joined += '\n';
  }
  return sha256_hex(joined);
}

const NodeOutcome *RunResult::find(NodeKey key) const {
  for (const auto &n : nodes)
    if (n.key == key) return &n;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Simulator

namespace {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool matches(const std::vector<int> &set, int party) {
  return set.empty() || std::find(set.begin(), set.end(), party) != set.end();
}

class Simulator;

struct Node {
  NodeKey key;
  std::uint64_t input = 0;
  bool corrupted = false;
  std::optional<Behavior> behavior;
  std::vector<std::unique_ptr<Process>> procs;
  std::mt19937_64 rng;
  std::optional<Decision> decision;
  bool crashed = false;
};

struct Envelope {
  std::size_t src = 0;
  std::size_t dst = 0;
  Bytes payload;
  Time sent_at = 0;
  Time release_time = 0;
  std::uint64_t id = 0;
};

struct Event {
  enum class Type { kStart, kDeliver, kTimer, kCrash };
  Time t = 0;
  std::uint64_t seq = 0;
  Type type = Type::kStart;
  std::size_t node = 0;
  int sub = 0;
  std::uint64_t tag = 0;
  std::size_t envelope = 0;

  bool operator>(const Event &o) const {
    return t != o.t ? t > o.t : seq > o.seq;
  }
};

class SubContext final : public Context {
 public:
  SubContext(Simulator &sim, std::size_t node, int sub)
      : sim_(sim), node_(node), sub_(sub) {}

  Time now() const override;
  int self() const override;
  int party_count() const override;
  const SystemParams &params() const override;
  void send(int dst_party, Bytes payload) override;
  void decide(std::uint64_t value, std::string detail) override;
  void set_timer(Time delay, std::uint64_t tag) override;
  std::uint64_t coin(std::uint64_t instance, std::uint64_t round) override;
  Bytes sign(const Bytes &message) override;
  bool verify(int party, const Bytes &message, const Bytes &signature) override;
  std::uint64_t random() override;

 private:
  Simulator &sim_;
  std::size_t node_;
  int sub_;
};

class Simulator {
 public:
  Simulator(const ProcessFactory &factory, const SystemParams &params,
            const NetworkConfig &network, const AdversaryScript &adversary,
            const std::vector<std::uint64_t> &inputs, std::uint64_t seed,
            const RunOptions &options)
      : factory_(factory),
        params_(params),
        network_(network),
        adversary_(adversary),
        seed_(seed),
        options_(options),
        sched_rng_(mix64(seed ^ 0x5c4ed5c4ed5c4edULL)) {
    params_.validate();
    network_.validate();
    validate_adversary();
    build_nodes(inputs);
  }

  RunResult run();

  // Context plumbing.
  Time now() const { return now_; }
  const SystemParams &params() const { return params_; }
  int party_of(std::size_t node) const { return nodes_[node].key.party; }
  void send(std::size_t node, int sub, int dst_party, Bytes payload);
  void decide(std::size_t node, std::uint64_t value, std::string detail);
  void set_timer(std::size_t node, int sub, Time delay, std::uint64_t tag);
  std::uint64_t coin(std::size_t node, std::uint64_t instance,
                     std::uint64_t round);
  Bytes sign(std::size_t node, const Bytes &message);
  bool verify(int party, const Bytes &message, const Bytes &signature) const;
  std::uint64_t random(std::size_t node) { return nodes_[node].rng(); }

 private:
  void validate_adversary() const;
  void build_nodes(const std::vector<std::uint64_t> &inputs);
  void push(Event e) {
    e.seq = next_seq_++;
    queue_.push(e);
  }
  void record(TraceEvent e) {
    if (options_.record_trace) trace_.append(std::move(e));
  }
  void dispatch(const Event &e);
  void schedule_delivery(std::size_t env_index, Time at);
  Time default_delay();
  bool watch_satisfied() const;
  void release_held(bool force, Time at);
  static Bytes signature_token(int party, const Bytes &message) {
    return std::to_string(party) + ":" + std::to_string(fnv1a(message));
  }

  const ProcessFactory &factory_;
  SystemParams params_;
  NetworkConfig network_;
  const AdversaryScript &adversary_;
  std::uint64_t seed_;
  const RunOptions &options_;
  std::mt19937_64 sched_rng_;

  std::vector<Node> nodes_;
  std::map<NodeKey, std::size_t> index_;
  std::vector<std::size_t> watch_;
  std::vector<Envelope> envelopes_;
  std::vector<std::size_t> held_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
  std::unordered_set<std::string> signed_;
  ExecutionTrace trace_;
  Time now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_msg_ = 0;
  std::uint64_t messages_sent_ = 0;
};

Time SubContext::now() const { return sim_.now(); }
int SubContext::self() const { return sim_.party_of(node_); }
int SubContext::party_count() const { return sim_.params().n; }
const SystemParams &SubContext::params() const { return sim_.params(); }
void SubContext::send(int dst, Bytes payload) {
  sim_.send(node_, sub_, dst, std::move(payload));
}
void SubContext::decide(std::uint64_t value, std::string detail) {
  sim_.decide(node_, value, std::move(detail));
}
void SubContext::set_timer(Time delay, std::uint64_t tag) {
  sim_.set_timer(node_, sub_, delay, tag);
}
std::uint64_t SubContext::coin(std::uint64_t instance, std::uint64_t round) {
  return sim_.coin(node_, instance, round);
}
Bytes SubContext::sign(const Bytes &message) { return sim_.sign(node_, message); }
bool SubContext::verify(int party, const Bytes &message, const Bytes &signature) {
  return sim_.verify(party, message, signature);
}
std::uint64_t SubContext::random() { return sim_.random(node_); }

void Simulator::validate_adversary() const {
  if (options_.enforce_corruption_budget) {
    const int bound = network_.mode == NetworkMode::kSynchronous ? params_.ts
                                                                 : params_.ta;
    if (static_cast<int>(adversary_.corrupted.size()) > bound)
      throw Error(ErrorCode::kConfig,
                  "adversary corrupts " +
                      std::to_string(adversary_.corrupted.size()) +
                      " parties; the " + to_string(network_.mode) +
                      " bound is " + std::to_string(bound));
  }
  for (const auto &[party, behavior] : adversary_.corrupted)
    if (party < 0 || party >= params_.n)
      throw Error(ErrorCode::kConfig, "corrupted party out of range");
  if (network_.mode == NetworkMode::kSynchronous)
    for (const auto &rule : adversary_.rules)
      if (rule.action == DeliveryRule::Action::kHold ||
          rule.hi > network_.delta || rule.lo < 1)
        throw Error(ErrorCode::kConfig,
                    "synchronous delivery rules must stay within [1, delta]");
  for (const auto &rule : adversary_.rules)
    if (rule.action != DeliveryRule::Action::kHold &&
        (rule.lo < 1 || rule.hi < rule.lo))
      throw Error(ErrorCode::kConfig, "delivery rule delays must be >= 1");
}

void Simulator::build_nodes(const std::vector<std::uint64_t> &inputs) {
  std::vector<Wiring::NodeSpec> specs;
  if (options_.wiring) {
    specs = options_.wiring->nodes();
  } else {
    if (static_cast<int>(inputs.size()) != params_.n)
      throw Error(ErrorCode::kConfig, "expected one input per party");
    for (int p = 0; p < params_.n; ++p) specs.push_back({{p, 0}, inputs[p]});
  }
  for (const auto &spec : specs) {
    if (spec.key.party < 0 || spec.key.party >= params_.n)
      throw Error(ErrorCode::kConfig, "node party out of range");
    if (!index_.emplace(spec.key, nodes_.size()).second)
      throw Error(ErrorCode::kConfig, "duplicate node instance");
    Node node;
    node.key = spec.key;
    node.input = spec.input;
    // Replicas of a party share its private tape.
    node.rng.seed(mix64(seed_ ^ mix64(0x7a9e000ULL + spec.key.party)));
    auto it = adversary_.corrupted.find(spec.key.party);
    if (it != adversary_.corrupted.end() && spec.key.replica == 0) {
      node.corrupted = true;
      node.behavior = it->second;
    }
    nodes_.push_back(std::move(node));
  }
  for (const auto &key : options_.hold_watch) {
    auto it = index_.find(key);
    if (it == index_.end())
      throw Error(ErrorCode::kConfig, "hold watch names an unknown node");
    watch_.push_back(it->second);
  }
  if (options_.hold_watch.empty())
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!nodes_[i].corrupted) watch_.push_back(i);
}

RunResult Simulator::run() {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    Node &node = nodes_[i];
    NodeSetup setup{node.key, node.input, &params_};
    using Kind = Behavior::Kind;
    if (node.behavior && node.behavior->kind == Kind::kCrashAt &&
        node.behavior->crash_at <= 0) {
      node.crashed = true;
      record({0, EventKind::kCrash, node.key, {}, 0, {}});
      continue;
    }
    if (node.behavior && node.behavior->kind == Kind::kFollowWithInput)
      setup.input = node.behavior->input;
    if (node.behavior && node.behavior->kind == Kind::kEquivocate) {
      setup.input = node.behavior->input;
      node.procs.push_back(factory_(setup));
      setup.input = node.behavior->input_b;
      node.procs.push_back(factory_(setup));
    } else {
      node.procs.push_back(factory_(setup));
    }
    for (int s = 0; s < static_cast<int>(node.procs.size()); ++s)
      push({0, 0, Event::Type::kStart, i, s, 0, 0});
    if (node.behavior && node.behavior->kind == Kind::kCrashAt)
      push({node.behavior->crash_at, 0, Event::Type::kCrash, i, 0, 0, 0});
  }

  bool horizon_exceeded = false;
  while (true) {
    if (!held_.empty()) release_held(false, now_ + 1);
    if (queue_.empty()) {
      if (held_.empty()) break;
      release_held(true, std::min(now_ + 1, network_.horizon));
      continue;
    }
    const Event &top = queue_.top();
    if (top.t > network_.horizon) {
      if (!held_.empty()) {
        release_held(true, network_.horizon);
        continue;
      }
      horizon_exceeded = true;
      break;
    }
    Event e = top;
    queue_.pop();
    now_ = e.t;
    dispatch(e);
  }

  RunResult result;
  result.end_time = now_;
  result.messages_sent = messages_sent_;
  while (!queue_.empty()) {
    if (queue_.top().type == Event::Type::kDeliver) ++result.messages_undelivered;
    queue_.pop();
  }
  result.messages_undelivered += held_.size();
  for (auto &node : nodes_) {
    result.nodes.push_back({node.key, node.corrupted, node.crashed, node.decision});
    if (!node.corrupted && !node.crashed && !node.decision) horizon_exceeded = true;
  }
  result.horizon_exceeded = horizon_exceeded;
  result.trace = std::move(trace_);
  return result;
}

void Simulator::dispatch(const Event &e) {
  Node &node = nodes_[e.node];
  if (node.crashed) return;
  switch (e.type) {
    case Event::Type::kStart: {
      SubContext ctx(*this, e.node, e.sub);
      node.procs[e.sub]->on_start(ctx);
      break;
    }
    case Event::Type::kTimer: {
      record({now_, EventKind::kTimer, node.key, {}, 0, std::to_string(e.tag)});
      SubContext ctx(*this, e.node, e.sub);
      node.procs[e.sub]->on_timer(ctx, e.tag);
      break;
    }
    case Event::Type::kCrash:
      node.crashed = true;
      record({now_, EventKind::kCrash, node.key, {}, 0, {}});
      break;
    case Event::Type::kDeliver: {
      const Envelope &env = envelopes_[e.envelope];
      const Node &src = nodes_[env.src];
      if (options_.record_trace)
        record({now_, EventKind::kDeliver, node.key, src.key, env.id,
                to_hex(env.payload)});
      const int src_party = src.key.party;
      // The payload may be reused after handlers enqueue more envelopes.
      const Bytes payload = env.payload;
      for (int s = 0; s < static_cast<int>(node.procs.size()); ++s) {
        SubContext ctx(*this, e.node, s);
        node.procs[s]->on_message(ctx, src_party, payload);
      }
      break;
    }
  }
}

Time Simulator::default_delay() {
  if (network_.mode == NetworkMode::kSynchronous) {
    if (network_.exact_delta) return network_.delta;
    return std::uniform_int_distribution<Time>(1, network_.delta)(sched_rng_);
  }
  return std::uniform_int_distribution<Time>(1, network_.async_max_delay)(
      sched_rng_);
}

void Simulator::send(std::size_t node_index, int sub, int dst_party,
                     Bytes payload) {
  Node &node = nodes_[node_index];
  if (node.crashed) return;
  if (dst_party < 0 || dst_party >= params_.n)
    throw Error(ErrorCode::kInvalidArgument, "send to unknown party");
  if (node.behavior) {
    const auto &b = *node.behavior;
    if (b.kind == Behavior::Kind::kEquivocate) {
      bool to_a = std::find(b.parties.begin(), b.parties.end(), dst_party) !=
                  b.parties.end();
      if (to_a != (sub == 0)) return;
    } else if (b.kind == Behavior::Kind::kSilentTo) {
      if (std::find(b.parties.begin(), b.parties.end(), dst_party) !=
          b.parties.end())
        return;
    }
  }
  const std::uint64_t id = next_msg_++;
  ++messages_sent_;
  if (options_.record_trace)
    record({now_, EventKind::kSend, node.key, {dst_party, 0}, id, to_hex(payload)});

  std::vector<Wiring::Route> routes;
  if (options_.wiring) {
    routes = options_.wiring->route(node.key, dst_party);
  } else {
    routes.push_back({{dst_party, 0}, Wiring::Route::Kind::kDefault, 0});
  }
  for (const auto &route : routes) {
    auto it = index_.find(route.dst);
    if (it == index_.end())
      throw Error(ErrorCode::kConfig, "route to unknown node instance");
    envelopes_.push_back({node_index, it->second, payload, now_, 0, id});
    const std::size_t env = envelopes_.size() - 1;
    Time delay = 0;
    bool hold = false;
    switch (route.kind) {
      case Wiring::Route::Kind::kFixed: delay = route.delay; break;
      case Wiring::Route::Kind::kHold: hold = true; break;
      case Wiring::Route::Kind::kDefault: {
        const DeliveryRule *rule = nullptr;
        for (const auto &r : adversary_.rules)
          if (matches(r.from, node.key.party) && matches(r.to, dst_party)) {
            rule = &r;
            break;
          }
        if (!rule) {
          delay = default_delay();
        } else if (rule->action == DeliveryRule::Action::kFixed) {
          delay = rule->lo;
        } else if (rule->action == DeliveryRule::Action::kUniform) {
          delay = std::uniform_int_distribution<Time>(rule->lo, rule->hi)(sched_rng_);
        } else {
          hold = true;
          envelopes_[env].release_time = rule->release_time;
        }
        break;
      }
    }
    if (hold) {
      held_.push_back(env);
    } else {
      schedule_delivery(env, now_ + std::max<Time>(delay, 1));
    }
  }
}

void Simulator::schedule_delivery(std::size_t env, Time at) {
  Event e;
  e.t = at;
  e.type = Event::Type::kDeliver;
  e.node = envelopes_[env].dst;
  e.envelope = env;
  push(e);
}

bool Simulator::watch_satisfied() const {
  for (std::size_t i : watch_)
    if (!nodes_[i].decision && !nodes_[i].crashed) return false;
  return true;
}

void Simulator::release_held(bool force, Time at) {
  if (!force && !watch_satisfied()) return;
  std::vector<std::size_t> keep;
  for (std::size_t env : held_) {
    if (force) {
      // A drained queue or the horizon releases everything, though never
      // before its release time unless that lies past the horizon.
      Time when = std::max(at, envelopes_[env].release_time);
      schedule_delivery(env, std::min(when, network_.horizon));
    } else if (envelopes_[env].release_time <= now_) {
      schedule_delivery(env, at);
    } else {
      keep.push_back(env);
    }
  }
  held_ = std::move(keep);
}

void Simulator::decide(std::size_t node_index, std::uint64_t value,
                       std::string detail) {
  Node &node = nodes_[node_index];
  if (node.decision) return;
  if (options_.record_trace) {
    std::string data = std::to_string(value);
    if (!detail.empty()) data += " core=" + detail;
    record({now_, EventKind::kDecide, node.key, {}, 0, std::move(data)});
  }
  node.decision = Decision{value, std::move(detail), now_};
}

void Simulator::set_timer(std::size_t node, int sub, Time delay,
                          std::uint64_t tag) {
  Event e;
  e.t = now_ + std::max<Time>(delay, 0);
  e.type = Event::Type::kTimer;
  e.node = node;
  e.sub = sub;
  e.tag = tag;
  push(e);
}

std::uint64_t Simulator::coin(std::size_t node, std::uint64_t instance,
                              std::uint64_t round) {
  std::uint64_t value = common_coin(seed_, instance, round);
  if (options_.record_trace)
    record({now_, EventKind::kCoin, nodes_[node].key, {}, 0,
            std::to_string(instance) + ":" + std::to_string(round) + "=" +
                std::to_string(value)});
  return value;
}

Bytes Simulator::sign(std::size_t node_index, const Bytes &message) {
  if (params_.setup != Setup::kPki)
    throw Error(ErrorCode::kSetupUnavailable, "signatures need a PKI");
  const int party = nodes_[node_index].key.party;
  signed_.insert(std::to_string(party) + "|" + message);
  if (options_.record_trace)
    record({now_, EventKind::kSign, nodes_[node_index].key, {}, 0, to_hex(message)});
  return signature_token(party, message);
}

bool Simulator::verify(int party, const Bytes &message,
                       const Bytes &signature) const {
  if (params_.setup != Setup::kPki)
    throw Error(ErrorCode::kSetupUnavailable, "signatures need a PKI");
  if (signature != signature_token(party, message)) return false;
  return signed_.count(std::to_string(party) + "|" + message) != 0;
}

}  // namespace

RunResult run(const ProcessFactory &factory, const SystemParams &params,
              const NetworkConfig &network, const AdversaryScript &adversary,
              const std::vector<std::uint64_t> &inputs, std::uint64_t seed,
              const RunOptions &options) {
  Simulator sim(factory, params, network, adversary, inputs, seed, options);
  return sim.run();
}

std::pair<NetworkConfig, AdversaryScript> canonical_schedule(
    const std::vector<int> &crashed, Time delta, Time horizon) {
  NetworkConfig net;
  net.mode = NetworkMode::kSynchronous;
  net.delta = delta;
  net.horizon = horizon;
  net.exact_delta = true;
  AdversaryScript adversary;
  for (int p : crashed) adversary.corrupted[p] = Behavior::crash(0);
  return {net, adversary};
}

std::vector<DeliveryRule> async_partition_schedule(
    const std::vector<std::vector<int>> &groups, Time release_time,
    Time intra_delay) {
  std::vector<DeliveryRule> rules;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      for (int a : groups[i])
        for (int b : groups[j])
          if (a == b)
            throw Error(ErrorCode::kInvalidArgument, "partition groups overlap");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].empty()) continue;
    DeliveryRule intra;
    intra.from = groups[i];
    intra.to = groups[i];
    intra.action = DeliveryRule::Action::kFixed;
    intra.lo = intra.hi = intra_delay;
    rules.push_back(intra);
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (j == i || groups[j].empty()) continue;
      DeliveryRule cross;
      cross.from = groups[i];
      cross.to = groups[j];
      cross.action = DeliveryRule::Action::kHold;
      cross.release_time = release_time;
      rules.push_back(cross);
    }
  }
  return rules;
}

}  // namespace aba::sim
