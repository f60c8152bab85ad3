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

#include <algorithm>
#include <cmath>

#include "engines.hpp"

namespace aba::proto {

namespace {

using sim::NodeSetup;
using sim::Process;

class RbcProcess final : public Process {
 public:
  RbcProcess(const ProtocolConfig &c, const NodeSetup &s)
      : sender_(c.sender), input_(s.input),
        rbc_(c.params, [](Context &ctx, int, std::uint64_t value) {
          ctx.decide(value);
        }) {}

  void on_start(Context &ctx) override {
    if (ctx.self() == sender_) rbc_.broadcast(ctx, input_);
  }
  void on_message(Context &ctx, int src, const Bytes &payload) override {
    wire::Reader r(payload);
    auto h = r.header();
    if (h && h->protocol == wire::ProtocolId::kRbc && h->instance == static_cast<std::uint64_t>(sender_))
      rbc_.handle(ctx, src, *h, r);
  }

 private:
  int sender_;
  std::uint64_t input_;
  RbcEngine rbc_;
};

class BinaryBaProcess final : public Process {
 public:
  BinaryBaProcess(const ProtocolConfig &c, const NodeSetup &s)
      : input_(static_cast<int>(s.input & 1U)),
        ba_(c.params, c.delta, [](Context &ctx, std::uint64_t, int bit) {
          ctx.decide(static_cast<std::uint64_t>(bit));
        }) {}

  void on_start(Context &ctx) override { ba_.start(ctx, kId, input_, true); }
  void on_message(Context &ctx, int src, const Bytes &payload) override {
    wire::Reader r(payload);
    auto h = r.header();
    if (h && h->instance == kId &&
        (h->protocol == wire::ProtocolId::kBinaryBa ||
         h->protocol == wire::ProtocolId::kDolevStrong))
      ba_.handle(ctx, src, *h, r);
  }
  void on_timer(Context &ctx, std::uint64_t tag) override {
    ba_.handle_timer(ctx, tag);
  }

 private:
  static constexpr std::uint64_t kId = 0;
  int input_;
  BaEngine ba_;
};

// ACS alone, or ACS followed by a certificate lookup.
class CoreProcess final : public Process {
 public:
  CoreProcess(const ProtocolConfig &c, const NodeSetup &s)
      : domain_(c.domain),
        certificate_(c.certificate),
        input_(static_cast<int>(s.input)),
        acs_(c.params, c.domain.input_size(), c.delta,
             [this](Context &ctx, const InputConfiguration &core) { output(ctx, core); }) {}

  void on_start(Context &ctx) override { acs_.start(ctx, input_); }
  void on_message(Context &ctx, int src, const Bytes &payload) override {
    acs_.handle(ctx, src, payload);
  }
  void on_timer(Context &ctx, std::uint64_t tag) override {
    acs_.handle_timer(ctx, tag);
  }

 private:
  void output(Context &ctx, const InputConfiguration &core) {
    std::string encoded = core.encode(domain_);
    if (!certificate_) {
      ctx.decide(core.size(), std::move(encoded));
      return;
    }
    auto sigma = certificate_->lookup(core);
    if (!sigma)
      throw Error(ErrorCode::kMissingSigmaEntry,
                  "no certificate entry for core " + encoded);
    ctx.decide(static_cast<std::uint64_t>(*sigma), std::move(encoded));
  }

  Domain domain_;
  std::shared_ptr<const SimilarityCertificate> certificate_;
  int input_;
  AcsEngine acs_;
};

class SharedValueProcess final : public Process {
 public:
  SharedValueProcess(const ProtocolConfig &c, const NodeSetup &s)
      : pinned_(c.shared_value), input_(s.input) {}

  void on_start(Context &ctx) override {
    const std::uint64_t s =
        pinned_ ? *pinned_ : ctx.coin(kSharedValueInstance, 0);
    if (input_ != s) ctx.decide(s);
  }
  void on_message(Context &, int, const Bytes &) override {}

 private:
  std::optional<std::uint64_t> pinned_;
  std::uint64_t input_;
};

class ConstantProcess final : public Process {
 public:
  explicit ConstantProcess(std::uint64_t value) : value_(value) {}
  void on_start(Context &ctx) override { ctx.decide(value_); }
  void on_message(Context &, int, const Bytes &) override {}

 private:
  std::uint64_t value_;
};

enum StrawmanType : std::uint8_t { kInput = 1 };

Bytes strawman_message(std::uint32_t round, std::uint64_t value) {
  wire::Writer w({wire::ProtocolId::kStrawman, 0, round, kInput});
  w.u64(value);
  return w.take();
}

std::optional<std::pair<std::uint32_t, std::uint64_t>> parse_strawman(
    const Bytes &payload) {
  wire::Reader r(payload);
  auto h = r.header();
  if (!h || h->protocol != wire::ProtocolId::kStrawman) return std::nullopt;
  std::uint64_t v = r.u64();
  if (!r.ok()) return std::nullopt;
  return std::make_pair(h->round, v);
}

// Round timers re-arm once with zero delay so that every message due at
// the same instant is delivered before the round closes.
constexpr std::uint64_t kSettled = 1ULL << 63;

// Decides the minimum heard after two delta. Only sound without faults.
class LocalMinProcess final : public Process {
 public:
  LocalMinProcess(const ProtocolConfig &c, const NodeSetup &s)
      : delta_(c.delta), min_(s.input) {}

  void on_start(Context &ctx) override {
    for (int p = 0; p < ctx.party_count(); ++p)
      if (p != ctx.self()) ctx.send(p, strawman_message(0, min_));
    ctx.set_timer(2 * delta_, 0);
  }
  void on_message(Context &, int, const Bytes &payload) override {
    if (auto m = parse_strawman(payload)) min_ = std::min(min_, m->second);
  }
  void on_timer(Context &ctx, std::uint64_t tag) override {
    if (!(tag & kSettled)) return ctx.set_timer(0, tag | kSettled);
    ctx.decide(min_);
  }

 private:
  Time delta_;
  std::uint64_t min_;
};

// One exchange, then the most frequent value; ties go to the own input,
// then to the smallest value.
class MajorityProcess final : public Process {
 public:
  MajorityProcess(const ProtocolConfig &c, const NodeSetup &s)
      : delta_(c.delta), input_(s.input) {}

  void on_start(Context &ctx) override {
    counts_[input_] += 1;
    for (int p = 0; p < ctx.party_count(); ++p)
      if (p != ctx.self()) ctx.send(p, strawman_message(0, input_));
    ctx.set_timer(delta_, 0);
  }
  void on_message(Context &, int src, const Bytes &payload) override {
    auto m = parse_strawman(payload);
    if (m && heard_.insert(src).second) counts_[m->second] += 1;
  }
  void on_timer(Context &ctx, std::uint64_t tag) override {
    if (!(tag & kSettled)) return ctx.set_timer(0, tag | kSettled);
    int best = 0;
    for (const auto &[v, c] : counts_) best = std::max(best, c);
    if (counts_[input_] == best) {
      ctx.decide(input_);
      return;
    }
    for (const auto &[v, c] : counts_)
      if (c == best) {
        ctx.decide(v);
        return;
      }
  }

 private:
  Time delta_;
  std::uint64_t input_;
  std::set<int> heard_;
  std::map<std::uint64_t, int> counts_;
};

// Floods the running minimum once per round and decides after `rounds`.
class FloodMinProcess final : public Process {
 public:
  FloodMinProcess(const ProtocolConfig &c, const NodeSetup &s)
      : delta_(c.delta),
        rounds_(c.flood_rounds > 0 ? c.flood_rounds : c.params.ts + 1),
        min_(s.input) {}

  void on_start(Context &ctx) override { step(ctx, 0); }
  void on_message(Context &, int, const Bytes &payload) override {
    if (auto m = parse_strawman(payload)) min_ = std::min(min_, m->second);
  }
  void on_timer(Context &ctx, std::uint64_t tag) override {
    if (!(tag & kSettled)) return ctx.set_timer(0, tag | kSettled);
    step(ctx, static_cast<int>(tag & ~kSettled));
  }

 private:
  void step(Context &ctx, int round) {
    if (round == rounds_) {
      ctx.decide(min_);
      return;
    }
    for (int p = 0; p < ctx.party_count(); ++p)
      if (p != ctx.self())
        ctx.send(p, strawman_message(static_cast<std::uint32_t>(round), min_));
    ctx.set_timer(delta_, static_cast<std::uint64_t>(round + 1));
  }

  Time delta_;
  int rounds_;
  std::uint64_t min_;
};

void require_bound(const ProtocolConfig &c) {
  if (!c.check_preconditions) return;
  const auto &p = c.params;
  if (!resilience_bound_holds(p))
    throw Error(ErrorCode::kConfig,
                std::string(c.name) + " needs " +
                    (p.setup == Setup::kPki ? "n > 2ts + ta" : "n > 3ts"));
  if (!quorums_intersect(p))
    throw Error(ErrorCode::kConfig, "quorum intersection below ta + 1");
}

}  // namespace

const std::vector<std::string> &protocol_names() {
  static const std::vector<std::string> names = {
      "rbc", "bin-ba", "acs", "universal", "ba-star",
      "constant", "local-min", "majority3", "flood-min"};
  return names;
}

bool is_fixture(const std::string &name) {
  return name == "constant" || name == "local-min" || name == "majority3" ||
         name == "flood-min";
}

bool quorums_intersect(const SystemParams &params) {
  return 2 * (params.n - params.ts) - params.n >= params.ta + 1;
}

double fixed_to_double(std::uint64_t value) {
  return std::ldexp(static_cast<double>(value), -64);
}

std::uint64_t double_to_fixed(double value) {
  if (!(value >= 0.0 && value < 1.0))
    throw Error(ErrorCode::kInvalidArgument, "fixed-point value must lie in [0, 1)");
  const double scaled = std::ldexp(value, 64);
  if (scaled >= 18446744073709551615.0) return ~0ULL;
  return static_cast<std::uint64_t>(scaled);
}

sim::ProcessFactory make_protocol(const ProtocolConfig &config) {
  config.params.validate();
  if (config.delta <= 0) throw Error(ErrorCode::kConfig, "delta must be positive");
  const ProtocolConfig c = config;
  const std::string &name = c.name;

  if (name == "rbc" || name == "bin-ba" || name == "acs" || name == "universal")
    require_bound(c);

  if (name == "rbc") {
    if (c.sender < 0 || c.sender >= c.params.n)
      throw Error(ErrorCode::kConfig, "rbc sender out of range");
    return [c](const NodeSetup &s) { return std::make_unique<RbcProcess>(c, s); };
  }
  if (name == "bin-ba")
    return [c](const NodeSetup &s) { return std::make_unique<BinaryBaProcess>(c, s); };
  if (name == "acs" || name == "universal") {
    if (c.domain.input_size() > (1 << 20))
      throw Error(ErrorCode::kConfig, "input domain too large");
    ProtocolConfig copy = c;
    if (name == "acs") {
      copy.certificate.reset();
    } else {
      if (!c.certificate)
        throw Error(ErrorCode::kConfig, "universal needs a certificate");
      if (c.certificate->params() != c.params)
        throw Error(ErrorCode::kConfig, "certificate was built for other parameters");
      if (!(c.certificate->domain() == c.domain))
        throw Error(ErrorCode::kDomainMismatch, "certificate domain differs");
    }
    return [copy](const NodeSetup &s) { return std::make_unique<CoreProcess>(copy, s); };
  }
  if (name == "ba-star")
    return [c](const NodeSetup &s) { return std::make_unique<SharedValueProcess>(c, s); };
  if (name == "constant") {
    const std::uint64_t v = c.constant;
    return [v](const NodeSetup &) { return std::make_unique<ConstantProcess>(v); };
  }
  if (name == "local-min")
    return [c](const NodeSetup &s) { return std::make_unique<LocalMinProcess>(c, s); };
  if (name == "majority3")
    return [c](const NodeSetup &s) { return std::make_unique<MajorityProcess>(c, s); };
  if (name == "flood-min")
    return [c](const NodeSetup &s) { return std::make_unique<FloodMinProcess>(c, s); };
  throw Error(ErrorCode::kConfig, "unknown protocol '" + name + "'");
}

}  // namespace aba::proto
