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

#include "aba/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aba/attacks.hpp"

namespace aba::scenario {

using nlohmann::json;
using sim::Behavior;

namespace {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string &base_dir, const std::string &path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

bool shared_value_protocol(const std::string &name) { return name == "ba-star"; }

// Input values are domain labels; bare integers are read as labels too.
// ba-star takes fixed-point reals in [0, 1) or {"fixed": <u64>}.
std::uint64_t parse_value(const json &j, const Scenario &s) {
  if (shared_value_protocol(s.protocol.name)) {
    if (j.is_object()) return j.at("fixed").get<std::uint64_t>();
    if (j.is_number()) return proto::double_to_fixed(j.get<double>());
    throw Error(ErrorCode::kConfig, "ba-star inputs are numbers in [0, 1)");
  }
  if (s.protocol.name == "bin-ba") {
    int b = j.is_string() ? std::stoi(j.get<std::string>()) : j.get<int>();
    if (b != 0 && b != 1) throw Error(ErrorCode::kConfig, "bin-ba inputs are bits");
    return static_cast<std::uint64_t>(b);
  }
  std::string label;
  if (j.is_string()) {
    label = j.get<std::string>();
  } else if (j.is_number_integer()) {
    label = std::to_string(j.get<long long>());
  } else {
    throw Error(ErrorCode::kConfig, "input values must be labels");
  }
  auto idx = s.domain().find_input(label);
  if (!idx) throw Error(ErrorCode::kConfig, "'" + label + "' is not an input value");
  return static_cast<std::uint64_t>(*idx);
}

std::vector<int> parse_parties(const json &j, int n) {
  std::vector<int> out;
  for (const auto &p : j) {
    int v = p.get<int>();
    if (v < 0 || v >= n) throw Error(ErrorCode::kConfig, "party id out of range");
    out.push_back(v);
  }
  return out;
}

Behavior::Kind parse_kind(const std::string &name) {
  if (name == "crash") return Behavior::Kind::kCrashAt;
  if (name == "follow") return Behavior::Kind::kFollowWithInput;
  if (name == "equivocate") return Behavior::Kind::kEquivocate;
  if (name == "silent") return Behavior::Kind::kSilentTo;
  throw Error(ErrorCode::kConfig, "unknown behavior '" + name + "'");
}

Behavior parse_behavior(const json &j, const Scenario &s) {
  const int n = s.params().n;
  Behavior b;
  b.kind = parse_kind(j.at("behavior").get<std::string>());
  switch (b.kind) {
    case Behavior::Kind::kCrashAt: b.crash_at = j.value("at", sim::Time{0}); break;
    case Behavior::Kind::kFollowWithInput: b.input = parse_value(j.at("input"), s); break;
    case Behavior::Kind::kEquivocate: {
      const auto &in = j.at("inputs");
      if (!in.is_array() || in.size() != 2)
        throw Error(ErrorCode::kConfig, "equivocate needs two inputs");
      b.input = parse_value(in[0], s);
      b.input_b = parse_value(in[1], s);
      b.parties = parse_parties(j.at("receivers"), n);
      break;
    }
    case Behavior::Kind::kSilentTo: b.parties = parse_parties(j.at("parties"), n); break;
  }
  return b;
}

sim::DeliveryRule parse_rule(const json &j, int n) {
  sim::DeliveryRule r;
  if (j.contains("from")) r.from = parse_parties(j.at("from"), n);
  if (j.contains("to")) r.to = parse_parties(j.at("to"), n);
  if (j.value("hold", false)) {
    r.action = sim::DeliveryRule::Action::kHold;
    r.release_time = j.value("release", sim::Time{0});
  } else if (j.contains("delay")) {
    r.action = sim::DeliveryRule::Action::kFixed;
    r.lo = r.hi = j.at("delay").get<sim::Time>();
  } else {
    r.action = sim::DeliveryRule::Action::kUniform;
    r.lo = j.at("min").get<sim::Time>();
    r.hi = j.at("max").get<sim::Time>();
  }
  return r;
}

std::shared_ptr<const SimilarityCertificate> build_certificate(
    const ValidityProperty &property, const SystemParams &params,
    const Domain &domain, const Budget &budget) {
  auto cr = compute_similarity_certificate(property, params, domain, budget);
  if (!cr.certificate)
    throw Error(ErrorCode::kConfig,
                "no similarity certificate exists; witness " +
                    cr.witness->encode(domain));
  return std::make_shared<SimilarityCertificate>(std::move(*cr.certificate));
}

// Domain, property and protocol configuration shared by scenarios and attacks.
void parse_protocol(const json &doc, const std::string &base_dir,
                    const Budget &budget, Scenario &s, bool attack) {
  auto &pc = s.protocol;
  pc.name = doc.value("protocol", std::string("universal"));
  const auto &p = doc.at("params");
  pc.params.n = p.at("n").get<int>();
  pc.params.ts = p.at("ts").get<int>();
  pc.params.ta = p.at("ta").get<int>();
  pc.params.setup = parse_setup(p.value("setup", std::string("pki")));
  pc.params.validate();

  const int values = doc.value("values", 2);
  s.validity = doc.value("validity", std::string());
  if (doc.contains("table")) {
    auto entry = load_table_property(read_file(resolve(base_dir, doc.at("table"))),
                                     s.validity.empty() ? "table" : s.validity);
    s.validity = entry.property.name;
    s.property = entry.property;
    pc.domain = entry.domain;
  } else if (!s.validity.empty()) {
    auto entry = catalog_lookup(s.validity, values);
    s.property = entry.property;
    pc.domain = entry.domain;
  } else {
    pc.domain = Domain::numeric(values);
  }

  pc.sender = doc.value("sender", 0);
  pc.flood_rounds = doc.value("flood_rounds", 0);
  pc.check_preconditions = doc.value("check_preconditions", !attack);
  if (doc.contains("constant")) {
    const auto &c = doc.at("constant");
    std::string label = c.is_string() ? c.get<std::string>() : std::to_string(c.get<long long>());
    auto idx = pc.domain.find_output(label);
    if (!idx) throw Error(ErrorCode::kConfig, "constant is not an output value");
    pc.constant = static_cast<std::uint64_t>(*idx);
  }
  if (doc.contains("shared_value")) {
    const auto &v = doc.at("shared_value");
    pc.shared_value = v.is_object() ? v.at("fixed").get<std::uint64_t>()
                                    : proto::double_to_fixed(v.get<double>());
  }

  if (pc.name == "universal") {
    if (doc.contains("certificate")) {
      auto cert = SimilarityCertificate::from_json(
          read_file(resolve(base_dir, doc.at("certificate"))));
      pc.certificate = std::make_shared<SimilarityCertificate>(std::move(cert));
      if (!s.property) pc.domain = pc.certificate->domain();
    } else {
      if (!s.property)
        throw Error(ErrorCode::kConfig, "universal needs a validity property or certificate");
      pc.certificate = build_certificate(*s.property, pc.params, pc.domain, budget);
    }
  }
}

}  // namespace

PropertyRequest parse_property_request(std::string_view json_text,
                                       const std::string &base_dir) {
  try {
    json doc = json::parse(json_text);
    if (!doc.contains("validity") && !doc.contains("table"))
      throw Error(ErrorCode::kConfig, "request needs \"validity\" or \"table\"");
    doc["protocol"] = "none";  // no certificate is built here
    Scenario s;
    parse_protocol(doc, base_dir, Budget{}, s, true);
    return PropertyRequest{s.params(), *s.property, s.domain()};
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("bad request: ") + e.what());
  }
}

Scenario parse_scenario(std::string_view json_text, const std::string &base_dir,
                        const Budget &budget) {
  Scenario s;
  try {
    json doc = json::parse(json_text);
    parse_protocol(doc, base_dir, budget, s, false);
    const int n = s.params().n;

    if (doc.contains("network")) {
      const auto &net = doc.at("network");
      const std::string mode = net.value("mode", std::string("sync"));
      if (mode == "sync") {
        s.network.mode = sim::NetworkMode::kSynchronous;
      } else if (mode == "async") {
        s.network.mode = sim::NetworkMode::kAsynchronous;
      } else {
        throw Error(ErrorCode::kConfig, "network mode must be sync or async");
      }
      s.network.delta = net.value("delta", s.network.delta);
      s.network.horizon = net.value("horizon", s.network.horizon);
      s.network.exact_delta = net.value("canonical", false);
      s.network.async_max_delay = net.value("async_max_delay", s.network.async_max_delay);
    }
    s.network.validate();
    s.protocol.delta = s.network.delta;

    if (!doc.contains("seed"))
      throw Error(ErrorCode::kConfig, "scenario needs an explicit \"seed\"");
    s.seed = doc.at("seed").get<std::uint64_t>();
    s.allow_excess_corruption = doc.value("allow_excess_corruption", false);

    if (!doc.contains("inputs"))
      throw Error(ErrorCode::kConfig, "scenario needs \"inputs\"");
    const auto &inputs = doc.at("inputs");
    if (!inputs.is_array() || static_cast<int>(inputs.size()) != n)
      throw Error(ErrorCode::kConfig, "\"inputs\" needs one value per party");
    for (const auto &v : inputs) s.inputs.push_back(parse_value(v, s));

    if (doc.contains("adversary")) {
      const auto &adv = doc.at("adversary");
      if (adv.contains("corrupted"))
        for (const auto &[key, beh] : adv.at("corrupted").items()) {
          int party = std::stoi(key);
          if (party < 0 || party >= n)
            throw Error(ErrorCode::kConfig, "corrupted party out of range");
          s.adversary.corrupted[party] = parse_behavior(beh, s);
        }
      if (adv.contains("partition")) {
        const auto &part = adv.at("partition");
        std::vector<std::vector<int>> groups;
        for (const auto &g : part.at("groups")) groups.push_back(parse_parties(g, n));
        s.adversary.rules = sim::async_partition_schedule(
            groups, part.value("release", sim::Time{0}),
            part.value("intra_delay", s.network.delta));
      }
      if (adv.contains("rules"))
        for (const auto &r : adv.at("rules")) s.adversary.rules.push_back(parse_rule(r, n));
    }

    if (doc.contains("fuzz")) {
      const auto &f = doc.at("fuzz");
      s.fuzz.random_inputs = f.value("random_inputs", false);
      s.fuzz.corrupt = f.value("corrupt", 0);
      if (f.contains("behaviors"))
        for (const auto &b : f.at("behaviors")) s.fuzz.behaviors.push_back(parse_kind(b.get<std::string>()));
      s.fuzz.adversarial_delays = f.value("adversarial_delays", false);
    }

    if (!s.allow_excess_corruption) {
      const bool sync = s.network.mode == sim::NetworkMode::kSynchronous;
      const int bound = sync ? s.params().ts : s.params().ta;
      if (static_cast<int>(s.adversary.corrupted.size()) > bound)
        throw Error(ErrorCode::kConfig,
                    "more corrupted parties than the " +
                        std::string(sync ? "synchronous" : "asynchronous") +
                        " bound allows");
    }
    // Surface protocol configuration errors at parse time.
    proto::make_protocol(s.protocol);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("bad scenario: ") + e.what());
  } catch (const std::invalid_argument &e) {
    throw Error(ErrorCode::kConfig, std::string("bad scenario: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// Checks

namespace {

bool core_protocol(const std::string &name) {
  return name == "acs" || name == "universal";
}

void violation(Checks &c, int &counter, std::string what) {
  ++counter;
  c.violations.push_back(std::move(what));
}

// Output index a decision stands for, when the protocol outputs domain values.
std::optional<int> output_index(const Scenario &s, std::uint64_t value) {
  const auto &name = s.protocol.name;
  if (name == "universal" || name == "constant") {
    if (value < static_cast<std::uint64_t>(s.domain().output_size()))
      return static_cast<int>(value);
    return std::nullopt;
  }
  if (name == "local-min" || name == "majority3" || name == "flood-min") {
    if (value >= static_cast<std::uint64_t>(s.domain().input_size())) return std::nullopt;
    return s.domain().find_output(s.domain().input_label(static_cast<int>(value)));
  }
  return std::nullopt;
}

Checks check_run(const Scenario &s, const std::vector<PartyOutcome> &parties) {
  Checks c;
  const auto &params = s.params();
  const auto &name = s.protocol.name;
  std::vector<Assignment> honest_pairs;
  std::vector<int> honest;
  for (const auto &p : parties)
    if (!p.corrupted) {
      honest.push_back(p.party);
      honest_pairs.push_back({p.party, static_cast<int>(s.inputs[p.party])});
    }

  // Agreement.
  const sim::Decision *first = nullptr;
  for (const auto &p : parties) {
    if (p.corrupted || !p.decision) continue;
    if (!first) {
      first = &*p.decision;
      continue;
    }
    const bool same = core_protocol(name) ? first->same_outcome(*p.decision)
                                          : first->value == p.decision->value;
    if (!same) {
      violation(c, c.agreement, "agreement: party " + std::to_string(p.party) +
                                    " decided differently");
      break;
    }
  }

  std::optional<std::uint64_t> unanimous;
  if (!honest.empty()) {
    const std::uint64_t first = s.inputs[honest.front()];
    if (std::all_of(honest.begin(), honest.end(),
                    [&](int p) { return s.inputs[p] == first; }))
      unanimous = first;
  }

  for (const auto &p : parties) {
    if (p.corrupted || !p.decision) continue;
    const auto &d = *p.decision;
    const std::string who = "party " + std::to_string(p.party);
    if (name == "rbc") {
      if (!s.adversary.corrupted.count(s.protocol.sender) &&
          d.value != s.inputs[s.protocol.sender])
        violation(c, c.validity, "validity: " + who + " delivered a value the sender never sent");
    } else if (name == "bin-ba") {
      if (unanimous && d.value != *unanimous)
        violation(c, c.validity, "validity: " + who + " decided against unanimous input");
    } else if (name == "ba-star") {
      if (unanimous && d.value == *unanimous)
        violation(c, c.validity, "validity: " + who + " output the unanimous input");
    } else if (s.property &&
               static_cast<int>(honest_pairs.size()) >= params.min_config_size()) {
      auto out = output_index(s, d.value);
      if (!out || !(*s.property)(params, InputConfiguration(honest_pairs)).contains(*out))
        violation(c, c.validity, "validity: " + who + " output outside V(H)");
    }
  }

  if (core_protocol(name)) {
    const bool sync = s.network.mode == sim::NetworkMode::kSynchronous;
    std::set<std::string> seen;
    const InputConfiguration h(honest_pairs);
    for (const auto &p : parties) {
      if (p.corrupted || !p.decision || !seen.insert(p.decision->detail).second) continue;
      InputConfiguration core = InputConfiguration::decode(p.decision->detail, s.domain());
      for (int q : honest) {
        auto v = core.value_of(q);
        if (v && *v != static_cast<int>(s.inputs[q]))
          violation(c, c.integrity, "integrity: core records a wrong input for party " +
                                        std::to_string(q));
      }
      if (static_cast<int>(core.size()) < params.n - params.ts)
        violation(c, c.core_size, "core smaller than n - ts");
      if (!sync && static_cast<int>(core.size()) < params.n - params.ta)
        ++c.async_core_below_n_minus_ta;
      if (sync && static_cast<int>(s.adversary.corrupted.size()) <= params.ts)
        for (int q : honest)
          if (!core.value_of(q)) {
            violation(c, c.honest_core, "honest core: party " + std::to_string(q) +
                                            " missing from the core");
            break;
          }
      if (static_cast<int>(h.size()) >= params.min_config_size() &&
          static_cast<int>(core.size()) >= params.min_config_size()) {
        auto sim_set = similar(core, params, s.domain());
        if (std::find(sim_set.begin(), sim_set.end(), h) == sim_set.end())
          violation(c, c.coherence, "coherence: H is not similar to the core");
      }
    }
  }
  return c;
}

json value_json(const Scenario &s, std::uint64_t value) {
  const auto &name = s.protocol.name;
  if (name == "ba-star") return {{"fixed", value}, {"real", proto::fixed_to_double(value)}};
  if (name == "universal" || name == "constant") {
    if (value < static_cast<std::uint64_t>(s.domain().output_size()))
      return s.domain().output_label(static_cast<int>(value));
  } else if (name == "rbc" || proto::is_fixture(name)) {
    if (value < static_cast<std::uint64_t>(s.domain().input_size()))
      return s.domain().input_label(static_cast<int>(value));
  }
  return value;
}

}  // namespace

RunSummary run_scenario(const Scenario &s, bool keep_trace) {
  auto factory = proto::make_protocol(s.protocol);
  sim::RunOptions opts;
  opts.record_trace = keep_trace;
  opts.enforce_corruption_budget = !s.allow_excess_corruption;
  auto result = sim::run(factory, s.params(), s.network, s.adversary, s.inputs, s.seed, opts);

  RunSummary sum;
  sum.all_honest_decided = true;
  for (const auto &node : result.nodes) {
    if (node.key.replica != 0) continue;
    const bool corrupted = s.adversary.corrupted.count(node.key.party) != 0;
    sum.parties.push_back({node.key.party, corrupted, node.decision});
    if (!corrupted) {
      if (node.decision) {
        sum.max_decision_time = std::max(sum.max_decision_time, node.decision->at);
      } else {
        sum.all_honest_decided = false;
      }
    }
  }
  sum.horizon_exceeded = result.horizon_exceeded;
  sum.messages = result.messages_sent;
  sum.checks = check_run(s, sum.parties);
  if (keep_trace) {
    sum.trace_jsonl = result.trace.to_jsonl();
    sum.trace_hash = sim::sha256_hex(sum.trace_jsonl);
  }
  return sum;
}

std::string RunSummary::to_json(const Scenario &s) const {
  json decisions = json::array();
  for (const auto &p : parties) {
    json j = {{"party", p.party}, {"corrupted", p.corrupted}, {"decided", p.decision.has_value()}};
    if (p.decision) {
      j["value"] = value_json(s, p.decision->value);
      j["at"] = p.decision->at;
      if (!p.decision->detail.empty()) j["core"] = p.decision->detail;
    }
    decisions.push_back(j);
  }
  json out = {
      {"protocol", s.protocol.name},
      {"params",
       {{"n", s.params().n}, {"ts", s.params().ts}, {"ta", s.params().ta},
        {"setup", to_string(s.params().setup)}}},
      {"network", to_string(s.network.mode)},
      {"seed", s.seed},
      {"decisions", decisions},
      {"checks",
       {{"agreement", checks.agreement},
        {"validity", checks.validity},
        {"integrity", checks.integrity},
        {"honest_core", checks.honest_core},
        {"core_size", checks.core_size},
        {"coherence", checks.coherence},
        {"async_core_below_n_minus_ta", checks.async_core_below_n_minus_ta},
        {"violations", checks.violations}}},
      {"clean", clean()},
      {"all_honest_decided", all_honest_decided},
      {"horizon_exceeded", horizon_exceeded},
      {"max_decision_time", max_decision_time},
      {"messages", messages}};
  if (!s.validity.empty()) out["validity"] = s.validity;
  if (!trace_hash.empty()) out["trace_hash"] = trace_hash;
  return out.dump();
}

// ---------------------------------------------------------------------------
// Fuzzing

Scenario fuzz_instance(const Scenario &base, std::uint64_t seed) {
  Scenario s = base;
  s.seed = seed;
  const FuzzPlan &plan = base.fuzz;
  std::mt19937_64 rng(sim::mix64(seed ^ 0xf022f022f022f022ULL));
  const int n = s.params().n;
  const bool star = shared_value_protocol(s.protocol.name);
  const int values = s.protocol.name == "bin-ba" ? 2 : s.domain().input_size();
  auto random_value = [&]() -> std::uint64_t {
    if (star) return rng();
    return std::uniform_int_distribution<int>(0, values - 1)(rng);
  };
  if (plan.random_inputs)
    for (auto &v : s.inputs) v = random_value();

  const bool sync = s.network.mode == sim::NetworkMode::kSynchronous;
  if (plan.corrupt > 0) {
    const int bound = sync ? s.params().ts : s.params().ta;
    const int count = s.allow_excess_corruption ? plan.corrupt : std::min(plan.corrupt, bound);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Behavior::Kind> kinds = plan.behaviors;
    if (kinds.empty())
      kinds = {Behavior::Kind::kFollowWithInput, Behavior::Kind::kEquivocate};
    s.adversary.corrupted.clear();
    for (int i = 0; i < count && i < n; ++i) {
      Behavior b;
      b.kind = kinds[rng() % kinds.size()];
      switch (b.kind) {
        case Behavior::Kind::kCrashAt:
          b.crash_at = std::uniform_int_distribution<sim::Time>(0, 10 * s.network.delta)(rng);
          break;
        case Behavior::Kind::kFollowWithInput: b.input = random_value(); break;
        case Behavior::Kind::kEquivocate:
          b.input = random_value();
          b.input_b = random_value();
          if (b.input == b.input_b && !star) b.input_b = (b.input + 1) % values;
          [[fallthrough]];
        case Behavior::Kind::kSilentTo:
          for (int p = 0; p < n; ++p)
            if (rng() & 1U) b.parties.push_back(p);
          break;
      }
      s.adversary.corrupted[order[i]] = b;
    }
  }
  if (plan.adversarial_delays && !sync) {
    std::vector<int> slow;
    for (int p = 0; p < n; ++p)
      if (rng() % 3 == 0) slow.push_back(p);
    if (slow.empty()) slow.push_back(static_cast<int>(rng() % n));
    sim::DeliveryRule r;
    r.from = slow;
    r.action = sim::DeliveryRule::Action::kUniform;
    r.lo = s.network.delta;
    r.hi = 8 * s.network.async_max_delay;
    s.adversary.rules.insert(s.adversary.rules.begin(), r);
  }
  return s;
}

FuzzSummary fuzz(const Scenario &base, int seeds, std::uint64_t first_seed) {
  if (seeds < 1) throw Error(ErrorCode::kConfig, "fuzz needs at least one seed");
  FuzzSummary f;
  for (int i = 0; i < seeds; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    Scenario s = fuzz_instance(base, seed);
    RunSummary r = run_scenario(s, false);
    ++f.runs;
    if (r.all_honest_decided) ++f.decided_runs;
    f.max_decision_time = std::max(f.max_decision_time, r.max_decision_time);
    const Checks &c = r.checks;
    f.totals.agreement += c.agreement;
    f.totals.validity += c.validity;
    f.totals.integrity += c.integrity;
    f.totals.honest_core += c.honest_core;
    f.totals.core_size += c.core_size;
    f.totals.coherence += c.coherence;
    f.totals.async_core_below_n_minus_ta += c.async_core_below_n_minus_ta;
    if (!c.violations.empty()) {
      ++f.violating_runs;
      for (const auto &v : c.violations) {
        f.totals.violations.push_back(v);
        if (f.examples.size() < 10) f.examples.emplace_back(seed, v);
      }
    }
  }
  return f;
}

std::string FuzzSummary::to_json() const {
  json examples_json = json::array();
  for (const auto &[seed, what] : examples)
    examples_json.push_back({{"seed", seed}, {"violation", what}});
  json out = {{"runs", runs},
              {"decided_runs", decided_runs},
              {"decided_fraction", decided_fraction()},
              {"violating_runs", violating_runs},
              {"violations", totals.violations.size()},
              {"checks",
               {{"agreement", totals.agreement},
                {"validity", totals.validity},
                {"integrity", totals.integrity},
                {"honest_core", totals.honest_core},
                {"core_size", totals.core_size},
                {"coherence", totals.coherence},
                {"async_core_below_n_minus_ta", totals.async_core_below_n_minus_ta}}},
              {"examples", examples_json},
              {"max_decision_time", max_decision_time}};
  return out.dump();
}

// ---------------------------------------------------------------------------
// Attacks

AttackOutcome run_attack(std::string_view json_text, const std::string &base_dir) {
  try {
    json doc = json::parse(json_text);
    Scenario s;
    parse_protocol(doc, base_dir, Budget::from_env(), s, true);
    attack::AttackSetup setup;
    setup.protocol = s.protocol;
    setup.protocol.delta = doc.value("delta", sim::Time{10});
    setup.seed = doc.value("seed", std::uint64_t{1});
    setup.horizon = doc.value("horizon", setup.horizon);
    for (const auto &v : doc.at("inputs1")) setup.inputs1.push_back(parse_value(v, s));
    for (const auto &v : doc.at("inputs2")) setup.inputs2.push_back(parse_value(v, s));

    const std::string kind = doc.at("attack").get<std::string>();
    AttackOutcome out;
    if (kind == "split_brain") {
      auto rep = attack::split_brain(setup);
      out.report_json = rep.to_json();
      out.violation = rep.cross_disagreement || rep.within_group_disagreement;
    } else if (kind == "triple_partition") {
      auto rep = attack::triple_partition(setup);
      out.report_json = rep.to_json();
      out.violation = rep.cross_disagreement || rep.within_group_disagreement;
    } else if (kind == "ring") {
      auto rep = attack::ring_attack(setup, doc.value("r", 1));
      out.report_json = rep.to_json();
      out.violation = rep.some_adjacent_unequal;
    } else {
      throw Error(ErrorCode::kConfig, "unknown attack '" + kind + "'");
    }
    return out;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kConfig, std::string("bad attack description: ") + e.what());
  }
}

}  // namespace aba::scenario
