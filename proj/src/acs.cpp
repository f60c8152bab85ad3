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

// Agreement on a core set.
//
// Every party reliably broadcasts its input. There is one binary agreement
// per (sender, value) pair, so a pair enters the core only by agreement on
// that exact pair; reliable broadcast consistency is never relied upon.
//
// Epoch 1: at local time acs_core_time() every party starts all pairs'
// agreements at once, voting 1 exactly for the pairs it has delivered. In a
// synchronous run every honest broadcast has been delivered by then, so all
// honest pairs enter the core and the core reaches n - ts.
//
// Epoch 2 runs only if epoch 1 produced fewer than n - ts senders, which
// needs an asynchronous network: the usual vote-1-on-delivery,
// vote-0-after-(n - ts) composition, on fresh agreement instances.
//
// The core keeps, for each sender, the smallest value whose pair decided 1.

#include "engines.hpp"

namespace aba::proto {

AcsEngine::AcsEngine(const SystemParams &params, int value_count, Time delta,
                     OutputFn output)
    : params_(params),
      value_count_(value_count),
      delta_(delta),
      output_(std::move(output)),
      rbc_(params, [this](Context &ctx, int sender, std::uint64_t value) {
        on_deliver(ctx, sender, value);
      }),
      ba_(params, delta, [this](Context &ctx, std::uint64_t id, int bit) {
        on_decide(ctx, id, bit);
      }) {}

std::uint64_t AcsEngine::id(int epoch, int sender, int value) const {
  return (static_cast<std::uint64_t>(epoch) << 40) |
         (static_cast<std::uint64_t>(sender) << 20) |
         static_cast<std::uint64_t>(value);
}

void AcsEngine::start(Context &ctx, int input) {
  rbc_.broadcast(ctx, static_cast<std::uint64_t>(input));
  ctx.set_timer(acs_core_time(delta_), kCoreTimer);
}

void AcsEngine::handle(Context &ctx, int src, const Bytes &payload) {
  wire::Reader r(payload);
  auto h = r.header();
  if (!h) return;
  switch (h->protocol) {
    case wire::ProtocolId::kRbc: rbc_.handle(ctx, src, *h, r); break;
    case wire::ProtocolId::kBinaryBa:
    case wire::ProtocolId::kDolevStrong: ba_.handle(ctx, src, *h, r); break;
    default: break;
  }
}

void AcsEngine::handle_timer(Context &ctx, std::uint64_t tag) {
  if (ba_.handle_timer(ctx, tag)) return;
  if (tag != kCoreTimer || epoch_ != 0) return;
  epoch_ = 1;
  for (int j = 0; j < params_.n; ++j)
    for (int x = 0; x < value_count_; ++x) {
      auto it = delivered_.find(j);
      const int vote = it != delivered_.end() && it->second == x ? 1 : 0;
      ba_.start(ctx, id(1, j, x), vote, true);
    }
}

void AcsEngine::on_deliver(Context &ctx, int sender, std::uint64_t value) {
  if (value >= static_cast<std::uint64_t>(value_count_)) return;
  delivered_.emplace(sender, static_cast<int>(value));
  if (epoch_ == 2 && !zero_voted_) ba_.start(ctx, id(2, sender, static_cast<int>(value)), 1, false);
}

void AcsEngine::on_decide(Context &ctx, std::uint64_t instance, int bit) {
  const int epoch = static_cast<int>(instance >> 40);
  const int sender = static_cast<int>((instance >> 20) & 0xFFFFF);
  const int value = static_cast<int>(instance & 0xFFFFF);
  if (epoch < 1 || epoch > 2) return;
  decided_[epoch][{sender, value}] = bit;
  if (epoch == 2 && bit == 1) {
    ones_.insert(sender);
    if (static_cast<int>(ones_.size()) >= params_.n - params_.ts && !zero_voted_) {
      zero_voted_ = true;
      for (int j = 0; j < params_.n; ++j)
        for (int x = 0; x < value_count_; ++x)
          if (!ba_.started(id(2, j, x))) ba_.start(ctx, id(2, j, x), 0, false);
    }
  }
  if (static_cast<int>(decided_[epoch].size()) == params_.n * value_count_)
    finish_epoch(ctx, epoch);
}

void AcsEngine::finish_epoch(Context &ctx, int epoch) {
  if (done_ || epoch != epoch_) return;
  std::map<int, int> core;
  for (const auto &[pair, bit] : decided_[epoch])
    if (bit == 1 && !core.count(pair.first)) core[pair.first] = pair.second;
  if (static_cast<int>(core.size()) >= params_.n - params_.ts) {
    done_ = true;
    std::vector<Assignment> pairs;
    for (const auto &[party, value] : core) pairs.push_back({party, value});
    output_(ctx, InputConfiguration(std::move(pairs)));
    return;
  }
  if (epoch == 2) return;
  epoch_ = 2;
  for (const auto &[sender, value] : delivered_) ba_.start(ctx, id(2, sender, value), 1, false);
  // Decisions from faster parties may already have arrived.
  for (int j = 0; j < params_.n; ++j)
    for (int x = 0; x < value_count_; ++x)
      if (auto d = ba_.decision(id(2, j, x))) decided_[2][{j, x}] = *d;
  if (static_cast<int>(decided_[2].size()) == params_.n * value_count_)
    finish_epoch(ctx, 2);
}

}  // namespace aba::proto
