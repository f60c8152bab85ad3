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

#include "engines.hpp"

namespace aba::proto {

namespace {

enum RbcType : std::uint8_t { kSend = 1, kEcho = 2, kReady = 3 };

Bytes signed_text(int sender, std::uint64_t value) {
  return "RBC|" + std::to_string(sender) + "|" + std::to_string(value);
}

}  // namespace

RbcEngine::RbcEngine(const SystemParams &params, DeliverFn deliver)
    : params_(params), deliver_(std::move(deliver)) {
  if (params.setup == Setup::kPki) {
    echo_quorum_ = params.n - params.ts;
    deliver_quorum_ = params.n - params.ts;
  } else {
    echo_quorum_ = (params.n + params.ts) / 2 + 1;
    deliver_quorum_ = 2 * params.ts + 1;
  }
}

bool RbcEngine::signed_by_sender(Context &ctx, int sender, std::uint64_t value,
                                 const Bytes &sig) const {
  if (params_.setup != Setup::kPki) return true;
  return ctx.verify(sender, signed_text(sender, value), sig);
}

void RbcEngine::broadcast(Context &ctx, std::uint64_t value) {
  const int self = ctx.self();
  Bytes sig;
  if (params_.setup == Setup::kPki) sig = ctx.sign(signed_text(self, value));
  wire::Writer w({wire::ProtocolId::kRbc, static_cast<std::uint64_t>(self), 0, kSend});
  w.u64(value).str(sig);
  ctx.broadcast(w.take());
}

void RbcEngine::echo(Context &ctx, int sender, Instance &inst,
                     std::uint64_t value, const Bytes &sig) {
  if (inst.echoed) return;
  inst.echoed = true;
  wire::Writer w({wire::ProtocolId::kRbc, static_cast<std::uint64_t>(sender), 0, kEcho});
  w.u64(value).str(sig);
  ctx.broadcast(w.take());
}

void RbcEngine::ready(Context &ctx, int sender, Instance &inst,
                      std::uint64_t value) {
  if (inst.readied) return;
  inst.readied = true;
  wire::Writer w({wire::ProtocolId::kRbc, static_cast<std::uint64_t>(sender), 0, kReady});
  w.u64(value);
  ctx.broadcast(w.take());
}

void RbcEngine::handle(Context &ctx, int src, const wire::Header &h,
                       wire::Reader &r) {
  if (h.instance >= static_cast<std::uint64_t>(params_.n)) return;
  const int sender = static_cast<int>(h.instance);
  Instance &inst = instances_[sender];
  const std::uint64_t value = r.u64();
  switch (h.type) {
    case kSend: {
      Bytes sig = r.str();
      if (!r.ok() || src != sender) return;
      if (!signed_by_sender(ctx, sender, value, sig)) return;
      echo(ctx, sender, inst, value, sig);
      break;
    }
    case kEcho: {
      Bytes sig = r.str();
      if (!r.ok() || !signed_by_sender(ctx, sender, value, sig)) return;
      // With signatures an echo also proves what the sender said.
      if (params_.setup == Setup::kPki) echo(ctx, sender, inst, value, sig);
      auto &from = inst.echoes[value];
      from.insert(src);
      if (static_cast<int>(from.size()) >= echo_quorum_) ready(ctx, sender, inst, value);
      break;
    }
    case kReady: {
      if (!r.ok()) return;
      auto &from = inst.readies[value];
      from.insert(src);
      const int count = static_cast<int>(from.size());
      if (count >= params_.ts + 1) ready(ctx, sender, inst, value);
      if (count >= deliver_quorum_ && !inst.delivered) {
        inst.delivered = true;
        deliver_(ctx, sender, value);
      }
      break;
    }
    default:
      break;
  }
}

}  // namespace aba::proto
