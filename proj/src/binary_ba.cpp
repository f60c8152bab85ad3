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

// Binary agreement in two phases.
//
// The synchronous phase is n parallel Dolev-Strong broadcasts, one per
// party's input bit, over ts + 1 rounds. Each party then applies
// sync_phase_output() to the bits it settled on. In a synchronous run every
// honest party holds the same vector, so they leave with the same bit, and
// that bit is the honest input if the honest parties were unanimous. In an
// asynchronous run the vectors may differ, but a unanimous honest input
// still survives because ta byzantine entries cannot reach ta + 1.
//
// The loop is a coin-based binary agreement with (n - ts)-quorums and
// (ts + 1)-relays: BVAL / AUX per round, a common coin per (instance,
// round), and TERM messages so that decided parties can stop.

#include <algorithm>

#include "engines.hpp"

namespace aba::proto {

namespace {

enum BaType : std::uint8_t { kBval = 1, kAux = 2, kTerm = 3, kSigned = 4 };

Bytes chain_text(std::uint64_t id, int sender, int bit) {
  return "DS|" + std::to_string(id) + "|" + std::to_string(sender) + "|" +
         std::to_string(bit);
}

}  // namespace

Time sync_phase_duration(const SystemParams &params, Time delta) {
  if (params.setup != Setup::kPki) return 0;
  return static_cast<Time>(params.ts + 2) * 3 * delta;
}

int sync_phase_output(int c0, int c1, int ta, int own) {
  const bool strong0 = c0 >= ta + 1, strong1 = c1 >= ta + 1;
  if (strong0 && strong1) return c1 > c0 ? 1 : 0;
  if (strong0) return 0;
  if (strong1) return 1;
  return own;
}

BaEngine::BaEngine(const SystemParams &params, Time delta, DecideFn decide)
    : params_(params), delta_(delta), decide_(std::move(decide)) {}

bool BaEngine::started(std::uint64_t id) const {
  auto it = instances_.find(id);
  return it != instances_.end() && it->second.started;
}

std::optional<int> BaEngine::decision(std::uint64_t id) const {
  auto it = instances_.find(id);
  if (it == instances_.end()) return std::nullopt;
  return it->second.decided;
}

std::uint32_t BaEngine::round(std::uint64_t id) const {
  auto it = instances_.find(id);
  return it == instances_.end() ? 0 : it->second.round;
}

void BaEngine::start(Context &ctx, std::uint64_t id, int bit, bool sync_phase) {
  Instance &inst = instances_[id];
  if (inst.started) return;
  inst.started = true;
  inst.input = bit;
  if (inst.halted) return;
  if (!sync_phase || params_.setup != Setup::kPki) {
    enter_loop(ctx, id, inst, bit);
    return;
  }
  inst.sync_start = ctx.now();
  const int self = ctx.self();
  inst.settled[self] |= static_cast<std::uint8_t>(1U << bit);
  Bytes sig = ctx.sign(chain_text(id, self, bit));
  wire::Writer w({wire::ProtocolId::kDolevStrong, id, 0, kSigned});
  w.u32(static_cast<std::uint32_t>(self)).u8(static_cast<std::uint8_t>(bit)).u32(1);
  w.u32(static_cast<std::uint32_t>(self)).str(sig);
  Bytes payload = w.take();
  for (int p = 0; p < params_.n; ++p)
    if (p != self) ctx.send(p, payload);
  ctx.set_timer(sync_phase_duration(params_, delta_), kTimerBit | id);
}

bool BaEngine::handle_timer(Context &ctx, std::uint64_t tag) {
  if ((tag & kTimerBit) == 0) return false;
  const std::uint64_t id = tag & ~kTimerBit;
  auto it = instances_.find(id);
  if (it == instances_.end()) return true;
  Instance &inst = it->second;
  if (inst.halted || inst.looping) return true;
  int c0 = 0, c1 = 0;
  for (const auto &[sender, mask] : inst.settled) {
    if (mask == 1) ++c0;
    if (mask == 2) ++c1;
  }
  enter_loop(ctx, id, inst, sync_phase_output(c0, c1, params_.ta, inst.input));
  return true;
}

void BaEngine::on_signed(Context &ctx, std::uint64_t id, Instance &inst,
                         int src, wire::Reader &r) {
  (void)src;
  if (!inst.started || inst.looping) return;
  const int sender = static_cast<int>(r.u32());
  const int bit = r.u8();
  const std::uint32_t length = r.u32();
  if (!r.ok() || sender < 0 || sender >= params_.n || bit > 1) return;
  if (length == 0 || length > static_cast<std::uint32_t>(params_.n)) return;
  std::vector<std::pair<int, Bytes>> chain;
  std::set<int> signers;
  for (std::uint32_t i = 0; i < length; ++i) {
    int signer = static_cast<int>(r.u32());
    Bytes sig = r.str();
    if (!r.ok() || signer < 0 || signer >= params_.n) return;
    if (!signers.insert(signer).second) return;
    chain.emplace_back(signer, std::move(sig));
  }
  if (chain.front().first != sender) return;

  const Time elapsed = ctx.now() - inst.sync_start;
  const Time last_round = static_cast<Time>(params_.ts + 1);
  if (elapsed <= 0 || elapsed > last_round * delta_) return;
  const Time round = (elapsed + delta_ - 1) / delta_;
  if (static_cast<Time>(length) < round) return;

  const Bytes text = chain_text(id, sender, bit);
  for (const auto &[signer, sig] : chain)
    if (!ctx.verify(signer, text, sig)) return;

  std::uint8_t &mask = inst.settled[sender];
  const std::uint8_t flag = static_cast<std::uint8_t>(1U << bit);
  if (mask & flag) return;
  mask |= flag;
  const int self = ctx.self();
  if (round >= last_round || signers.count(self)) return;

  wire::Writer w({wire::ProtocolId::kDolevStrong, id, 0, kSigned});
  w.u32(static_cast<std::uint32_t>(sender)).u8(static_cast<std::uint8_t>(bit));
  w.u32(length + 1);
  for (const auto &[signer, sig] : chain)
    w.u32(static_cast<std::uint32_t>(signer)).str(sig);
  w.u32(static_cast<std::uint32_t>(self)).str(ctx.sign(text));
  Bytes payload = w.take();
  for (int p = 0; p < params_.n; ++p)
    if (p != self && !signers.count(p)) ctx.send(p, payload);
}

void BaEngine::send_bval(Context &ctx, std::uint64_t id, Instance &inst,
                         std::uint32_t r, int b) {
  Round &round = inst.rounds[r];
  if (round.bval_sent[b]) return;
  round.bval_sent[b] = true;
  wire::Writer w({wire::ProtocolId::kBinaryBa, id, r, kBval});
  w.u8(static_cast<std::uint8_t>(b));
  ctx.broadcast(w.take());
}

void BaEngine::send_aux(Context &ctx, std::uint64_t id, Instance &inst,
                        std::uint32_t r, int b) {
  Round &round = inst.rounds[r];
  if (round.aux_sent) return;
  round.aux_sent = true;
  wire::Writer w({wire::ProtocolId::kBinaryBa, id, r, kAux});
  w.u8(static_cast<std::uint8_t>(b));
  ctx.broadcast(w.take());
}

void BaEngine::enter_loop(Context &ctx, std::uint64_t id, Instance &inst,
                          int est) {
  inst.looping = true;
  inst.round = 1;
  inst.est = est;
  send_bval(ctx, id, inst, 1, est);
  for (auto &[r, round] : inst.rounds)
    for (int b = 0; b < 2; ++b)
      if (static_cast<int>(round.bval[b].size()) >= params_.ts + 1)
        send_bval(ctx, id, inst, r, b);
  try_advance(ctx, id, inst);
}

void BaEngine::decide(Context &ctx, std::uint64_t id, Instance &inst, int b) {
  if (!inst.decided) {
    inst.decided = b;
    decide_(ctx, id, b);
  }
  if (!inst.term_sent && !inst.halted) {
    inst.term_sent = true;
    wire::Writer w({wire::ProtocolId::kBinaryBa, id, 0, kTerm});
    w.u8(static_cast<std::uint8_t>(b));
    ctx.broadcast(w.take());
  }
}

void BaEngine::on_term(Context &ctx, std::uint64_t id, Instance &inst, int src,
                       int b) {
  inst.term[b].insert(src);
  const int count = static_cast<int>(inst.term[b].size());
  if (count >= params_.ts + 1) decide(ctx, id, inst, b);
  if (count >= params_.n - params_.ts) {
    inst.halted = true;
    inst.rounds.clear();
  }
}

void BaEngine::try_advance(Context &ctx, std::uint64_t id, Instance &inst) {
  while (inst.looping && !inst.halted) {
    Round &round = inst.rounds[inst.round];
    if (!round.aux_sent) {
      if (round.first_bin < 0) return;
      send_aux(ctx, id, inst, inst.round, round.first_bin);
    }
    int support = 0;
    std::uint8_t vals = 0;
    for (const auto &[src, b] : round.aux)
      if (round.bin & (1U << b)) {
        ++support;
        vals |= static_cast<std::uint8_t>(1U << b);
      }
    if (support < params_.n - params_.ts) return;

    const int coin = static_cast<int>(ctx.coin(id, inst.round) & 1U);
    if (vals == 3) {
      inst.est = coin;
    } else {
      const int b = vals == 1 ? 0 : 1;
      inst.est = b;
      if (b == coin) {
        decide(ctx, id, inst, b);
        if (inst.halted) return;
      }
    }
    ++inst.round;
    send_bval(ctx, id, inst, inst.round, inst.est);
  }
}

void BaEngine::handle(Context &ctx, int src, const wire::Header &h,
                      wire::Reader &r) {
  Instance &inst = instances_[h.instance];
  if (inst.halted) return;
  if (h.protocol == wire::ProtocolId::kDolevStrong) {
    if (h.type == kSigned) on_signed(ctx, h.instance, inst, src, r);
    return;
  }
  const int b = r.u8();
  if (!r.ok() || b > 1) return;
  if (h.type == kTerm) {
    on_term(ctx, h.instance, inst, src, b);
    return;
  }
  // Old rounds stay live: relays there can still complete a slower party's
  // quorum.
  if (h.round == 0) return;
  Round &round = inst.rounds[h.round];
  if (h.type == kBval) {
    round.bval[b].insert(src);
    const int count = static_cast<int>(round.bval[b].size());
    if (inst.looping && count >= params_.ts + 1)
      send_bval(ctx, h.instance, inst, h.round, b);
    if (count >= params_.n - params_.ts && !(round.bin & (1U << b))) {
      round.bin |= static_cast<std::uint8_t>(1U << b);
      if (round.first_bin < 0) round.first_bin = b;
    }
  } else if (h.type == kAux) {
    round.aux.emplace(src, b);
  } else {
    return;
  }
  if (inst.looping && h.round == inst.round) try_advance(ctx, h.instance, inst);
}

}  // namespace aba::proto
