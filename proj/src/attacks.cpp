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

#include "aba/attacks.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace aba::attack {

using nlohmann::json;
using sim::Time;

namespace {

bool contains(const std::vector<int> &v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

ExecutionReport summarize(std::string label, const sim::RunResult &result) {
  ExecutionReport rep;
  rep.label = std::move(label);
  for (const auto &n : result.nodes) {
    if (n.corrupted || n.crashed) continue;
    rep.nodes.push_back(n);
    if (!n.decision) rep.undecided = true;
  }
  rep.trace_hash = result.trace.hash();
  return rep;
}

GroupView group_of(const ExecutionReport &rep, const std::vector<NodeKey> &keys) {
  GroupView g;
  for (const auto &key : keys) {
    for (const auto &n : rep.nodes)
      if (n.key == key) {
        g.members.push_back(key);
        g.decisions.push_back(n.decision ? std::optional(n.decision->value)
                                         : std::nullopt);
      }
  }
  return g;
}

std::vector<NodeKey> keys_of(const std::vector<int> &parties, int replica = 0) {
  std::vector<NodeKey> out;
  for (int p : parties) out.push_back({p, replica});
  return out;
}

// Same node decided the same way in both executions.
bool same_decisions(const ExecutionReport &x, const ExecutionReport &y,
                    const std::vector<NodeKey> &keys) {
  for (const auto &key : keys) {
    const sim::NodeOutcome *a = nullptr, *b = nullptr;
    for (const auto &n : x.nodes)
      if (n.key == key) a = &n;
    for (const auto &n : y.nodes)
      if (n.key == key) b = &n;
    if (!a || !b || !a->decision || !b->decision) return false;
    if (!a->decision->same_outcome(*b->decision)) return false;
  }
  return true;
}

json key_json(NodeKey k) { return {{"party", k.party}, {"replica", k.replica}}; }

json execution_json(const ExecutionReport &e) {
  json nodes = json::array();
  for (const auto &n : e.nodes) {
    json j = key_json(n.key);
    if (n.decision) {
      j["decision"] = n.decision->value;
      j["at"] = n.decision->at;
      if (!n.decision->detail.empty()) j["detail"] = n.decision->detail;
    } else {
      j["decision"] = nullptr;
    }
    nodes.push_back(j);
  }
  return {{"label", e.label}, {"nodes", nodes}, {"undecided", e.undecided},
          {"trace_hash", e.trace_hash}};
}

json group_json(const GroupView &g) {
  json members = json::array();
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    json j = key_json(g.members[i]);
    j["decision"] = g.decisions[i] ? json(*g.decisions[i]) : json(nullptr);
    members.push_back(j);
  }
  json out = {{"members", members}, {"consistent", g.consistent()}};
  if (auto v = g.value()) out["value"] = *v;
  return out;
}

json params_json(const SystemParams &p) {
  return {{"n", p.n}, {"ts", p.ts}, {"ta", p.ta}, {"setup", to_string(p.setup)}};
}

void check_inputs(const AttackSetup &s, int n) {
  if (static_cast<int>(s.inputs1.size()) != n ||
      static_cast<int>(s.inputs2.size()) != n)
    throw Error(ErrorCode::kConfig, "attack inputs need one value per party");
}

// L, M copies and R with the routing of the partition arguments. Messages
// a side sends to the far side are held; the middle copies each talk to
// their own side only, while both copies hear from both sides.
class PartitionWiring final : public sim::Wiring {
 public:
  PartitionWiring(const PartitionLayout &layout, std::vector<std::uint64_t> in1,
                  std::vector<std::uint64_t> in2, Time delta, bool control)
      : layout_(layout), in1_(std::move(in1)), in2_(std::move(in2)),
        delta_(delta), control_(control) {}

  std::vector<NodeSpec> nodes() const override {
    std::vector<NodeSpec> out;
    for (int p : layout_.left) out.push_back({{p, 0}, in1_[p]});
    for (int p : layout_.middle) {
      out.push_back({{p, 1}, in1_[p]});
      out.push_back({{p, 2}, control_ ? in1_[p] : in2_[p]});
    }
    for (int p : layout_.right) out.push_back({{p, 0}, control_ ? in1_[p] : in2_[p]});
    return out;
  }

  std::vector<Route> route(NodeKey src, int dst) const override {
    const Route::Kind far = control_ ? Route::Kind::kFixed : Route::Kind::kHold;
    const bool from_left = contains(layout_.left, src.party);
    const bool from_right = contains(layout_.right, src.party);
    const bool to_left = contains(layout_.left, dst);
    const bool to_right = contains(layout_.right, dst);
    auto near = [&](NodeKey k) { return Route{k, Route::Kind::kFixed, delta_}; };
    auto held = [&](NodeKey k) { return Route{k, far, delta_}; };
    if (from_left || from_right) {
      const bool same = from_left ? to_left : to_right;
      const bool other = from_left ? to_right : to_left;
      if (same) return {near({dst, 0})};
      if (other) return {held({dst, 0})};
      // To the middle: the own side's copy at once, the far copy like far traffic.
      const int own_copy = from_left ? 1 : 2;
      return {near({dst, own_copy}), held({dst, 3 - own_copy})};
    }
    // A middle copy: copy 1 belongs to L, copy 2 to R.
    if (to_left) return src.replica == 1 ? std::vector<Route>{near({dst, 0})}
                                         : std::vector<Route>{};
    if (to_right) return src.replica == 2 ? std::vector<Route>{near({dst, 0})}
                                          : std::vector<Route>{};
    return {near({dst, src.replica})};
  }

 private:
  PartitionLayout layout_;
  std::vector<std::uint64_t> in1_, in2_;
  Time delta_;
  bool control_;
};

sim::RunResult run_partition(const AttackSetup &s, const PartitionLayout &layout,
                             bool control) {
  auto factory = proto::make_protocol(s.protocol);
  PartitionWiring wiring(layout, s.inputs1, s.inputs2, s.protocol.delta, control);
  sim::NetworkConfig net;
  net.mode = sim::NetworkMode::kAsynchronous;
  net.delta = s.protocol.delta;
  net.horizon = s.horizon;
  sim::RunOptions opts;
  opts.wiring = &wiring;
  return sim::run(factory, s.protocol.params, net, {}, {}, s.seed, opts);
}

sim::RunResult run_canonical(const AttackSetup &s,
                             const std::vector<std::uint64_t> &inputs,
                             const std::vector<int> &crashed) {
  auto factory = proto::make_protocol(s.protocol);
  auto [net, adversary] = sim::canonical_schedule(crashed, s.protocol.delta, s.horizon);
  return sim::run(factory, s.protocol.params, net, adversary, inputs, s.seed);
}

}  // namespace

bool GroupView::all_decided() const {
  return std::all_of(decisions.begin(), decisions.end(),
                     [](const auto &d) { return d.has_value(); });
}

bool GroupView::consistent() const {
  std::set<std::uint64_t> seen;
  for (const auto &d : decisions)
    if (d) seen.insert(*d);
  return seen.size() <= 1;
}

std::optional<std::uint64_t> GroupView::value() const {
  if (decisions.empty() || !all_decided() || !consistent()) return std::nullopt;
  return *decisions.front();
}

PartitionLayout PartitionLayout::standard(const SystemParams &params) {
  if (params.n != 2 * params.ts + params.ta)
    throw Error(ErrorCode::kConfig, "partition layout needs n = 2ts + ta");
  PartitionLayout layout;
  int p = 0;
  for (int i = 0; i < params.ts; ++i) layout.left.push_back(p++);
  for (int i = 0; i < params.ta; ++i) layout.middle.push_back(p++);
  for (int i = 0; i < params.ts; ++i) layout.right.push_back(p++);
  return layout;
}

SplitBrainReport split_brain(const AttackSetup &setup) {
  const SystemParams &params = setup.protocol.params;
  if (params.n != 2 * params.ts)
    throw Error(ErrorCode::kConfig, "split brain needs n = 2ts");
  check_inputs(setup, params.n);
  PartitionLayout layout = PartitionLayout::standard({params.n, params.ts, 0, params.setup});

  SplitBrainReport rep;
  rep.params = params;
  rep.executions.push_back(summarize("a", run_canonical(setup, setup.inputs1, layout.right)));
  rep.executions.push_back(summarize("b", run_canonical(setup, setup.inputs2, layout.left)));
  rep.executions.push_back(summarize("c", run_partition(setup, layout, false)));
  rep.executions.push_back(summarize("d", run_canonical(setup, setup.inputs1, {})));

  const auto left = keys_of(layout.left), right = keys_of(layout.right);
  const auto &c = rep.executions[2];
  rep.left = group_of(c, left);
  rep.right = group_of(c, right);
  rep.left_matches_a = same_decisions(c, rep.executions[0], left);
  rep.right_matches_b = same_decisions(c, rep.executions[1], right);
  auto lv = rep.left.value(), rv = rep.right.value();
  rep.cross_disagreement = lv && rv && *lv != *rv;
  for (const auto &e : rep.executions)
    if (!group_of(e, left).consistent() || !group_of(e, right).consistent())
      rep.within_group_disagreement = true;
  return rep;
}

TriplePartitionReport triple_partition(const AttackSetup &setup) {
  const SystemParams &params = setup.protocol.params;
  PartitionLayout layout = PartitionLayout::standard(params);
  check_inputs(setup, params.n);

  TriplePartitionReport rep;
  rep.params = params;
  rep.degenerate = params.ta == 0;
  {
    auto control = run_partition(setup, layout, true);
    rep.control = summarize("control", control);
    for (int m : layout.middle) {
      bool same = control.trace.view_digest({m, 1}, setup.horizon) ==
                  control.trace.view_digest({m, 2}, setup.horizon);
      rep.replicas_identical.push_back(same);
      rep.control_identical = rep.control_identical && same;
    }
  }
  rep.attack = summarize("attack", run_partition(setup, layout, false));

  std::vector<NodeKey> left = keys_of(layout.left), right = keys_of(layout.right);
  for (int m : layout.middle) {
    left.push_back({m, 1});
    right.push_back({m, 2});
  }
  rep.left_side = group_of(rep.attack, left);
  rep.right_side = group_of(rep.attack, right);
  auto lv = rep.left_side.value(), rv = rep.right_side.value();
  rep.cross_disagreement = lv && rv && *lv != *rv;
  rep.within_group_disagreement =
      !rep.left_side.consistent() || !rep.right_side.consistent() ||
      !group_of(rep.control, left).consistent() ||
      !group_of(rep.control, right).consistent();
  return rep;
}

// ---------------------------------------------------------------------------
// Ring

RingLayout::RingLayout(int r) : r_(r) {
  if (r < 0) throw Error(ErrorCode::kInvalidArgument, "ring radius must be >= 0");
}

NodeKey RingLayout::node(int k, int i, int j) const {
  return {i - 1, (k - 1) * (2 * r_ + 2) + j + 1};
}

std::array<int, 3> RingLayout::coords(NodeKey key) const {
  const int row = 2 * r_ + 2;
  return {(key.replica - 1) / row + 1, key.party + 1, (key.replica - 1) % row};
}

std::vector<NodeKey> RingLayout::nodes() const {
  std::vector<NodeKey> out;
  for (int k = 1; k <= 2; ++k)
    for (int i = 1; i <= 3; ++i)
      for (int j = 0; j <= 2 * r_ + 1; ++j) out.push_back(node(k, i, j));
  return out;
}

std::vector<std::pair<NodeKey, NodeKey>> RingLayout::channels() const {
  std::vector<std::pair<NodeKey, NodeKey>> out;
  const int last = 2 * r_ + 1;
  for (int k = 1; k <= 2; ++k)
    for (int j = 0; j <= last; ++j) {
      out.push_back({node(k, 1, j), node(k, 2, j)});
      out.push_back({node(k, 2, j), node(k, 3, j)});
    }
  for (int j = 0; j < last; ++j) {
    out.push_back({node(1, 3, j), node(1, 1, j + 1)});
    out.push_back({node(2, 1, j), node(2, 3, j + 1)});
  }
  out.push_back({node(1, 1, 0), node(2, 3, 0)});
  out.push_back({node(1, 3, last), node(2, 1, last)});
  return out;
}

NodeKey RingLayout::neighbor(NodeKey key, int party) const {
  if (party == key.party) return key;
  for (const auto &[a, b] : channels()) {
    if (a == key && b.party == party) return b;
    if (b == key && a.party == party) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "ring node has no such neighbor");
}

bool RingLayout::is_single_cycle() const {
  std::map<NodeKey, std::vector<NodeKey>> adj;
  for (const auto &[a, b] : channels()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const auto all = nodes();
  if (adj.size() != all.size()) return false;
  for (const auto &[k, v] : adj)
    if (v.size() != 2) return false;
  // Walk the cycle from one node and count the steps back to it.
  NodeKey start = all.front(), prev = start, cur = adj[start][0];
  std::size_t steps = 1;
  while (!(cur == start)) {
    const auto &nb = adj[cur];
    NodeKey next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
    if (++steps > all.size()) return false;
  }
  return steps == all.size();
}

namespace {

class RingWiring final : public sim::Wiring {
 public:
  RingWiring(const RingLayout &layout, const std::vector<std::uint64_t> &in1,
             const std::vector<std::uint64_t> &in2, Time delta)
      : layout_(layout), delta_(delta) {
    for (const auto &key : layout.nodes()) {
      const auto c = layout.coords(key);
      specs_.push_back({key, c[0] == 1 ? in1[key.party] : in2[key.party]});
      for (int p = 0; p < 3; ++p) routes_[{key, p}] = layout.neighbor(key, p);
    }
  }

  std::vector<NodeSpec> nodes() const override { return specs_; }
  std::vector<Route> route(NodeKey src, int dst) const override {
    return {{routes_.at({src, dst}), Route::Kind::kFixed, delta_}};
  }

 private:
  const RingLayout &layout_;
  Time delta_;
  std::vector<NodeSpec> specs_;
  std::map<std::pair<NodeKey, int>, NodeKey> routes_;
};

}  // namespace

RingReport ring_attack(const AttackSetup &setup, int r) {
  const SystemParams &params = setup.protocol.params;
  if (params.n != 3 || params.ts != 1 || params.setup != Setup::kNone)
    throw Error(ErrorCode::kConfig, "the ring needs n = 3, ts = 1 and no setup");
  check_inputs(setup, 3);
  RingLayout layout(r);
  const Time delta = setup.protocol.delta;

  RingReport rep;
  rep.params = params;
  rep.r = r;
  rep.node_count = layout.nodes().size();
  rep.single_cycle = layout.is_single_cycle();

  auto factory = proto::make_protocol(setup.protocol);
  RingWiring wiring(layout, setup.inputs1, setup.inputs2, delta);
  sim::NetworkConfig net;
  net.mode = sim::NetworkMode::kSynchronous;
  net.exact_delta = true;
  net.delta = delta;
  net.horizon = setup.horizon;
  sim::RunOptions opts;
  opts.wiring = &wiring;
  opts.enforce_corruption_budget = false;
  auto ring = sim::run(factory, params, net, {}, {}, setup.seed, opts);
  rep.trace_hash = ring.trace.hash();

  for (const auto &key : layout.nodes()) {
    const auto *n = ring.find(key);
    rep.decisions.push_back(
        {key, n && n->decision ? std::optional(n->decision->value) : std::nullopt});
  }
  auto decision_of = [&](NodeKey key) -> std::optional<std::uint64_t> {
    const auto *n = ring.find(key);
    return n && n->decision ? std::optional(n->decision->value) : std::nullopt;
  };
  for (const auto &[a, b] : layout.channels()) {
    auto da = decision_of(a), db = decision_of(b);
    const bool eq = da && db && *da == *db;
    rep.adjacent_equal.push_back(eq);
    if (da && db && *da != *db) rep.some_adjacent_unequal = true;
  }

  rep.all_fidelity = true;
  for (int k = 1; k <= 2; ++k) {
    const auto &inputs = k == 1 ? setup.inputs1 : setup.inputs2;
    auto canon = run_canonical(setup, inputs, {});
    rep.canonical[k - 1] = summarize(k == 1 ? "canonical-1" : "canonical-2", canon);
    for (int i = 1; i <= 3; ++i) {
      const Time until = static_cast<Time>(r) * delta;
      const bool same = ring.trace.view_digest(layout.node(k, i, r), until) ==
                        canon.trace.view_digest({i - 1, 0}, until);
      rep.fidelity[k - 1][i - 1] = same;
      rep.all_fidelity = rep.all_fidelity && same;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reports

std::string SplitBrainReport::to_json() const {
  json execs = json::array();
  for (const auto &e : executions) execs.push_back(execution_json(e));
  json out = {{"scenario", "split_brain"},
              {"params", params_json(params)},
              {"executions", execs},
              {"left", group_json(left)},
              {"right", group_json(right)},
              {"checks",
               {{"left_matches_a", left_matches_a},
                {"right_matches_b", right_matches_b},
                {"cross_disagreement", cross_disagreement},
                {"within_group_disagreement", within_group_disagreement}}}};
  return out.dump();
}

std::string TriplePartitionReport::to_json() const {
  json out = {{"scenario", "triple_partition"},
              {"params", params_json(params)},
              {"degenerate", degenerate},
              {"control", execution_json(control)},
              {"attack", execution_json(attack)},
              {"left_side", group_json(left_side)},
              {"right_side", group_json(right_side)},
              {"checks",
               {{"replicas_identical", replicas_identical},
                {"control_identical", control_identical},
                {"cross_disagreement", cross_disagreement},
                {"within_group_disagreement", within_group_disagreement}}}};
  return out.dump();
}

std::string RingReport::to_json() const {
  json nodes = json::array();
  RingLayout layout(r);
  for (const auto &[key, d] : decisions) {
    auto c = layout.coords(key);
    nodes.push_back({{"k", c[0]}, {"i", c[1]}, {"j", c[2]},
                     {"decision", d ? json(*d) : json(nullptr)}});
  }
  json fid = json::array();
  for (int k = 0; k < 2; ++k)
    fid.push_back(json::array({fidelity[k][0], fidelity[k][1], fidelity[k][2]}));
  json out = {{"scenario", "ring"},
              {"params", params_json(params)},
              {"r", r},
              {"node_count", node_count},
              {"nodes", nodes},
              {"canonical",
               json::array({execution_json(canonical[0]),
                            execution_json(canonical[1])})},
              {"trace_hash", trace_hash},
              {"checks",
               {{"single_cycle", single_cycle},
                {"adjacent_equal", adjacent_equal},
                {"some_adjacent_unequal", some_adjacent_unequal},
                {"fidelity", fid},
                {"all_fidelity", all_fidelity}}}};
  return out.dump();
}

}  // namespace aba::attack
