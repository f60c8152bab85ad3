// Copyright (c) 2026, The aba authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <set>

#include <json.hpp>

#include "aba/catalog.hpp"
#include "aba/error.hpp"
#include "aba/protocols.hpp"
#include "aba/scenario.hpp"
#include "aba/wire.hpp"

using namespace aba;
using nlohmann::json;
namespace sc = aba::scenario;

namespace {

json params(int n, int ts, int ta, const char *setup = "pki") {
  return {{"n", n}, {"ts", ts}, {"ta", ta}, {"setup", setup}};
}

json sync_net(bool canonical = true) {
  return {{"mode", "sync"}, {"delta", 10}, {"canonical", canonical}, {"horizon", 200000}};
}

json async_net() {
  return {{"mode", "async"}, {"delta", 10}, {"async_max_delay", 40}, {"horizon", 400000}};
}

sc::RunSummary run(const json &doc) {
  return sc::run_scenario(sc::parse_scenario(doc.dump()));
}

std::vector<std::uint64_t> decided_values(const sc::RunSummary &s) {
  std::vector<std::uint64_t> v;
  for (const auto &p : s.parties)
    if (!p.corrupted && p.decision) v.push_back(p.decision->value);
  return v;
}

}  // namespace

TEST_CASE("wire format round trip") {
  wire::Writer w({wire::ProtocolId::kRbc, 77, 3, 2});
  w.u64(123456789).u32(9).str("abc").u8(4);
  auto bytes = w.take();
  CHECK(static_cast<std::uint8_t>(bytes[0]) == wire::kVersion);
  wire::Reader r(bytes);
  auto h = r.header();
  REQUIRE(h);
  CHECK(h->protocol == wire::ProtocolId::kRbc);
  CHECK(h->instance == 77);
  CHECK(h->round == 3);
  CHECK(h->type == 2);
  CHECK(r.u64() == 123456789);
  CHECK(r.u32() == 9);
  CHECK(r.str() == "abc");
  CHECK(r.u8() == 4);
  CHECK(r.ok());
  CHECK(r.done());

  wire::Reader short_read(std::string("\x01\x01", 2));
  CHECK_FALSE(short_read.header());
  wire::Reader bad_version(std::string(16, '\x07'));
  CHECK_FALSE(bad_version.header());
}

TEST_CASE("quorum intersection and synchronous-phase helpers") {
  CHECK(proto::quorums_intersect({4, 1, 1, Setup::kPki}));
  CHECK_FALSE(proto::quorums_intersect({3, 1, 1, Setup::kPki}));
  CHECK(proto::quorums_intersect({7, 2, 2, Setup::kPki}));
  CHECK(proto::sync_phase_duration({4, 1, 1, Setup::kPki}, 10) == 90);
  CHECK(proto::sync_phase_duration({4, 1, 0, Setup::kNone}, 10) == 0);
  CHECK(proto::acs_core_time(10) == 40);
  // ta + 1 support wins, ties go to 0, otherwise keep the own bit.
  CHECK(proto::sync_phase_output(0, 2, 1, 0) == 1);
  CHECK(proto::sync_phase_output(2, 2, 1, 1) == 0);
  CHECK(proto::sync_phase_output(1, 0, 1, 1) == 1);
  CHECK(proto::sync_phase_output(0, 1, 0, 0) == 1);
}

TEST_CASE("fixed point conversion") {
  CHECK(proto::fixed_to_double(0) == 0.0);
  CHECK(proto::fixed_to_double(proto::double_to_fixed(0.37)) == doctest::Approx(0.37));
  CHECK(proto::double_to_fixed(0.5) == (std::uint64_t{1} << 63));
}

TEST_CASE("protocol names and preconditions") {
  for (const auto &name : proto::protocol_names()) CHECK_FALSE(name.empty());
  CHECK(proto::is_fixture("local-min"));
  CHECK_FALSE(proto::is_fixture("universal"));
  proto::ProtocolConfig c;
  c.name = "nope";
  CHECK_THROWS_AS(proto::make_protocol(c), Error);
  c.name = "rbc";
  c.params = {3, 1, 1, Setup::kPki};
  CHECK_THROWS_AS(proto::make_protocol(c), Error);
  c.check_preconditions = false;
  CHECK_NOTHROW(proto::make_protocol(c));
  c.name = "bin-ba";
  c.check_preconditions = true;
  c.params = {3, 1, 0, Setup::kNone};
  CHECK_THROWS_AS(proto::make_protocol(c), Error);
  c.name = "universal";
  c.params = {4, 1, 1, Setup::kPki};
  CHECK_THROWS_AS(proto::make_protocol(c), Error);  // no certificate
}

TEST_CASE("rbc: honest sender delivers by three hops") {
  for (const char *setup : {"pki", "none"}) {
    json doc = {{"protocol", "rbc"}, {"params", params(4, 1, std::string(setup) == "pki", setup)},
                {"network", sync_net()}, {"seed", 1}, {"sender", 2},
                {"inputs", {"0", "0", "1", "0"}}};
    auto s = run(doc);
    CHECK(s.clean());
    CHECK(s.all_honest_decided);
    CHECK(s.max_decision_time <= 30);
    CHECK(decided_values(s) == std::vector<std::uint64_t>{1, 1, 1, 1});
  }
}

TEST_CASE("rbc: equivocating sender never splits honest deliveries") {
  for (const char *mode : {"sync", "async"}) {
    json doc = {{"protocol", "rbc"}, {"params", params(4, 1, 1)},
                {"network", std::string(mode) == "sync" ? sync_net(false) : async_net()},
                {"seed", 1}, {"sender", 0}, {"inputs", {"0", "0", "0", "0"}},
                {"adversary",
                 {{"corrupted",
                   {{"0", {{"behavior", "equivocate"}, {"inputs", {"0", "1"}}, {"receivers", {1}}}}}}}}};
    auto base = sc::parse_scenario(doc.dump());
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      auto s = base;
      s.seed = seed;
      auto sum = sc::run_scenario(s, false);
      CHECK(sum.checks.agreement == 0);
      auto v = decided_values(sum);
      for (auto x : v) CHECK(x == v.front());
    }
  }
}

TEST_CASE("rbc: crashed sender stalls without violations") {
  json doc = {{"protocol", "rbc"}, {"params", params(4, 1, 1)}, {"network", sync_net()},
              {"seed", 3}, {"sender", 1}, {"inputs", {"0", "1", "0", "0"}},
              {"adversary", {{"corrupted", {{"1", {{"behavior", "crash"}, {"at", 0}}}}}}}};
  auto s = run(doc);
  CHECK(s.clean());
  CHECK(decided_values(s).empty());
  CHECK_FALSE(s.all_honest_decided);
}

TEST_CASE("binary agreement: unanimous input is decided") {
  for (const char *setup : {"pki", "none"}) {
    for (int b = 0; b <= 1; ++b) {
      json doc = {{"protocol", "bin-ba"},
                  {"params", params(4, 1, std::string(setup) == "pki", setup)},
                  {"network", sync_net()}, {"seed", 5}, {"inputs", {b, b, b, b}}};
      auto s = run(doc);
      CHECK(s.clean());
      CHECK(decided_values(s) == std::vector<std::uint64_t>(4, b));
    }
  }
}

TEST_CASE("binary agreement: equivocator under an asynchronous adversary") {
  json doc = {{"protocol", "bin-ba"}, {"params", params(4, 1, 1)}, {"network", async_net()},
              {"seed", 1}, {"inputs", {0, 1, 0, 1}},
              {"fuzz", {{"random_inputs", true}, {"corrupt", 1}, {"behaviors", {"equivocate"}},
                        {"adversarial_delays", true}}}};
  auto f = sc::fuzz(sc::parse_scenario(doc.dump()), 200);
  CHECK(f.totals.agreement == 0);
  CHECK(f.totals.validity == 0);
  CHECK(f.decided_fraction() >= 0.95);
}

TEST_CASE("binary agreement: split inputs, honest parties, asynchronous") {
  for (const char *setup : {"pki", "none"}) {
    json doc = {{"protocol", "bin-ba"},
                {"params", params(4, 1, std::string(setup) == "pki", setup)},
                {"network", async_net()}, {"seed", 1}, {"inputs", {0, 0, 1, 1}}};
    auto f = sc::fuzz(sc::parse_scenario(doc.dump()), 100);
    CHECK(f.violating_runs == 0);
    CHECK(f.decided_runs == 100);
  }
}

TEST_CASE("binary agreement: synchronous runs with corruptions up to ts") {
  json doc = {{"protocol", "bin-ba"}, {"params", params(5, 2, 0)}, {"network", sync_net(false)},
              {"seed", 1}, {"inputs", {0, 1, 0, 1, 1}},
              {"fuzz", {{"random_inputs", true}, {"corrupt", 2}}}};
  auto f = sc::fuzz(sc::parse_scenario(doc.dump()), 100);
  CHECK(f.violating_runs == 0);
  CHECK(f.decided_runs == 100);
}

TEST_CASE("acs: canonical run includes everyone with their inputs") {
  json doc = {{"protocol", "acs"}, {"params", params(4, 1, 1)}, {"network", sync_net()},
              {"seed", 2}, {"inputs", {"1", "0", "1", "1"}}};
  auto s = run(doc);
  CHECK(s.clean());
  REQUIRE(s.all_honest_decided);
  for (const auto &p : s.parties) {
    CHECK(p.decision->value == 4);
    CHECK(p.decision->detail == "p0=1;p1=0;p2=1;p3=1");
  }
}

TEST_CASE("acs: synchronous crash keeps every honest party in the core") {
  json doc = {{"protocol", "acs"}, {"params", params(4, 1, 1)}, {"network", sync_net()},
              {"seed", 2}, {"inputs", {"1", "0", "1", "1"}},
              {"adversary", {{"corrupted", {{"3", {{"behavior", "crash"}, {"at", 0}}}}}}}};
  auto s = run(doc);
  CHECK(s.clean());
  for (const auto &p : s.parties)
    if (!p.corrupted) CHECK(p.decision->detail == "p0=1;p1=0;p2=1");
}

TEST_CASE("acs: asynchronous corruption keeps integrity and agreement") {
  json doc = {{"protocol", "acs"}, {"params", params(4, 1, 1)}, {"network", async_net()},
              {"seed", 1}, {"inputs", {"0", "1", "0", "1"}},
              {"fuzz", {{"random_inputs", true}, {"corrupt", 1}, {"adversarial_delays", true}}}};
  auto f = sc::fuzz(sc::parse_scenario(doc.dump()), 200);
  CHECK(f.totals.agreement == 0);
  CHECK(f.totals.integrity == 0);
  CHECK(f.totals.core_size == 0);
  CHECK(f.decided_fraction() >= 0.95);
}

TEST_CASE("universal: strong validity, unanimous zero") {
  json doc = {{"protocol", "universal"}, {"validity", "strong"}, {"params", params(4, 1, 1)},
              {"network", sync_net()}, {"seed", 1}, {"inputs", {"0", "0", "0", "0"}}};
  auto s = run(doc);
  CHECK(s.clean());
  CHECK(decided_values(s) == std::vector<std::uint64_t>(4, 0));
}

TEST_CASE("universal: interval hull stays inside the honest range") {
  for (const json &net : {sync_net(), sync_net(false), async_net()}) {
    json doc = {{"protocol", "universal"}, {"validity", "interval:0:9"},
                {"params", params(4, 1, 1)}, {"network", net}, {"seed", 1},
                {"inputs", {"2", "5", "5", "7"}},
                {"fuzz", {{"corrupt", 1}, {"adversarial_delays", true}}}};
    auto base = sc::parse_scenario(doc.dump());
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto s = sc::fuzz_instance(base, seed);
      auto sum = sc::run_scenario(s, false);
      CHECK(sum.clean());
      for (auto v : decided_values(sum)) CHECK((v >= 2 && v <= 7));
    }
  }
}

TEST_CASE("universal: clique hull outputs an honest input") {
  json doc = {{"protocol", "universal"}, {"validity", "clique:3"}, {"params", params(7, 2, 0)},
              {"network", sync_net(false)}, {"seed", 1},
              {"inputs", {"a", "a", "b", "c", "a", "b", "c"}},
              {"adversary",
               {{"corrupted",
                 {{"0", {{"behavior", "follow"}, {"input", "c"}}},
                  {"5", {{"behavior", "equivocate"}, {"inputs", {"a", "c"}}, {"receivers", {1, 2}}}}}}}}};
  auto base = sc::parse_scenario(doc.dump());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = base;
    s.seed = seed;
    auto sum = sc::run_scenario(s, false);
    CHECK(sum.clean());
    CHECK(sum.all_honest_decided);
    std::set<std::uint64_t> honest_inputs;
    for (int p : {1, 2, 3, 4, 6}) honest_inputs.insert(s.inputs[p]);
    for (auto v : decided_values(sum)) CHECK(honest_inputs.count(v) == 1);
  }
}

TEST_CASE("universal: certificate must match the parameters") {
  auto entry = catalog_lookup("strong", 2);
  SystemParams other{5, 1, 1, Setup::kPki};
  auto cert = compute_similarity_certificate(entry.property, other, entry.domain);
  proto::ProtocolConfig c;
  c.name = "universal";
  c.params = {4, 1, 1, Setup::kPki};
  c.domain = entry.domain;
  c.certificate = std::make_shared<SimilarityCertificate>(*cert.certificate);
  CHECK_THROWS_AS(proto::make_protocol(c), Error);
}

TEST_CASE("ba-star decides the shared value") {
  json doc = {{"protocol", "ba-star"}, {"params", params(2, 0, 0)}, {"network", sync_net()},
              {"seed", 1}, {"shared_value", 0.37}, {"inputs", {0.2, 0.5}}};
  auto s = run(doc);
  CHECK(s.clean());
  for (auto v : decided_values(s)) CHECK(v == proto::double_to_fixed(0.37));
  CHECK(s.max_decision_time == 0);
}

TEST_CASE("ba-star never decides for an input equal to the shared value") {
  json doc = {{"protocol", "ba-star"}, {"params", params(3, 1, 0)}, {"network", sync_net()},
              {"seed", 1}, {"shared_value", 0.37}, {"inputs", {0.37, 0.5, 0.6}}};
  auto s = run(doc);
  CHECK_FALSE(s.parties[0].decision);
  CHECK(s.parties[1].decision->value == proto::double_to_fixed(0.37));
  CHECK(s.parties[2].decision->value == proto::double_to_fixed(0.37));
}

TEST_CASE("ba-star with the coin avoids unanimous inputs") {
  json doc = {{"protocol", "ba-star"}, {"params", params(3, 1, 1)}, {"network", sync_net()},
              {"seed", 1}, {"inputs", {0.25, 0.25, 0.25}}};
  auto base = sc::parse_scenario(doc.dump());
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto s = base;
    s.seed = seed;
    auto sum = sc::run_scenario(s, false);
    CHECK(sum.clean());
    CHECK(sum.all_honest_decided);
    auto v = decided_values(sum);
    CHECK(v.front() == sim::common_coin(seed, proto::kSharedValueInstance, 0));
  }
}

TEST_CASE("fixtures behave as documented") {
  json doc = {{"protocol", "constant"}, {"constant", "1"}, {"params", params(3, 1, 0)},
              {"network", sync_net()}, {"seed", 1}, {"inputs", {"0", "0", "0"}}};
  auto s = run(doc);
  for (const auto &p : s.parties) {
    CHECK(p.decision->value == 1);
    CHECK(p.decision->at == 0);
  }

  doc = {{"protocol", "local-min"}, {"params", params(3, 1, 0)}, {"network", sync_net()},
         {"seed", 1}, {"inputs", {"1", "0", "1"}}};
  s = run(doc);
  for (const auto &p : s.parties) {
    CHECK(p.decision->value == 0);
    CHECK(p.decision->at == 20);
  }

  doc = {{"protocol", "majority3"}, {"params", params(3, 1, 0)}, {"network", sync_net()},
         {"seed", 1}, {"inputs", {"1", "0", "1"}}};
  s = run(doc);
  for (const auto &p : s.parties) CHECK(p.decision->value == 1);

  doc = {{"protocol", "flood-min"}, {"params", params(4, 1, 0)}, {"network", sync_net()},
         {"seed", 1}, {"inputs", {"1", "1", "1", "0"}},
         {"adversary", {{"corrupted", {{"3", {{"behavior", "crash"}, {"at", 0}}}}}}}};
  s = run(doc);
  for (const auto &p : s.parties)
    if (!p.corrupted) CHECK(p.decision->value == 1);
}
