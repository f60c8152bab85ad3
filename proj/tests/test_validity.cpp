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

#include <map>
#include <set>

#include "aba/catalog.hpp"
#include "aba/error.hpp"
#include "aba/validity.hpp"
#include "oracle.hpp"

using namespace aba;

namespace {

SystemParams P(int n, int ts, int ta, Setup setup = Setup::kPki) {
  return SystemParams{n, ts, ta, setup};
}

InputConfiguration cfg(std::vector<Assignment> a) { return InputConfiguration(std::move(a)); }

std::set<oracle::Vec> as_set(const std::vector<InputConfiguration> &v, int n) {
  std::set<oracle::Vec> s;
  for (const auto &c : v) s.insert(oracle::to_vec(c, n));
  return s;
}

// Outputs of a library property as a std::set, for comparison with oracles.
oracle::Outputs outputs(const ValidityProperty &v, const SystemParams &p,
                        const InputConfiguration &c) {
  auto vals = v(p, c).values();
  return {vals.begin(), vals.end()};
}

}  // namespace

TEST_CASE("configuration counts") {
  CHECK(count_input_configs(P(2, 1, 0), Domain::numeric(2)) == 8);
  CHECK(count_input_configs(P(1, 0, 0), Domain::numeric(1)) == 1);
  CHECK(count_input_configs(P(4, 1, 1), Domain::numeric(2)) == 48);
  CHECK(count_input_configs(P(3, 1, 1), Domain::numeric(2)) == 20);

  for (int n = 1; n <= 5; ++n)
    for (int ts = 0; ts < n; ++ts)
      for (int v = 1; v <= 3; ++v) {
        auto params = P(n, ts, 0);
        auto domain = Domain::numeric(v);
        auto listed = enumerate_input_configs(params, domain);
        CHECK(listed.size() == oracle::count_formula(n, ts, v));
        CHECK(count_input_configs(params, domain) == listed.size());
        auto brute = oracle::configs(n, ts, v);
        CHECK(as_set(listed, n) == std::set<oracle::Vec>(brute.begin(), brute.end()));
      }
}

TEST_CASE("enumeration order is by subset size, then lexicographic") {
  auto list = enumerate_input_configs(P(2, 1, 0), Domain::numeric(2));
  std::vector<std::string> enc;
  for (const auto &c : list) enc.push_back(c.encode(Domain::numeric(2)));
  CHECK(enc == std::vector<std::string>{"p0=0", "p0=1", "p1=0", "p1=1", "p0=0;p1=0",
                                        "p0=0;p1=1", "p0=1;p1=0", "p0=1;p1=1"});
}

TEST_CASE("enumeration respects the budget") {
  Budget b;
  b.max_configs = 47;
  CHECK_THROWS_AS(enumerate_input_configs(P(4, 1, 1), Domain::numeric(2), b), Error);
  try {
    enumerate_input_configs(P(4, 1, 1), Domain::numeric(2), b);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
  b.max_configs = 48;
  CHECK(enumerate_input_configs(P(4, 1, 1), Domain::numeric(2), b).size() == 48);
}

TEST_CASE("encoding round trip") {
  Domain d({"a", "b"}, {"a", "b"});
  auto c = cfg({{2, 1}, {0, 0}});
  CHECK(c.encode(d) == "p0=a;p2=b");
  CHECK(InputConfiguration::decode("p0=a;p2=b", d) == c);
  CHECK_THROWS_AS(InputConfiguration::decode("p0=z", d), Error);
}

TEST_CASE("configuration validation") {
  auto d = Domain::numeric(2);
  CHECK_NOTHROW(cfg({{0, 0}, {1, 1}}).validate(P(3, 1, 0), d));
  CHECK_THROWS_AS(cfg({{0, 0}}).validate(P(3, 1, 0), d), Error);
  CHECK_THROWS_AS(cfg({{0, 0}, {5, 1}}).validate(P(3, 1, 0), d), Error);
  CHECK_THROWS_AS(cfg({{0, 0}, {1, 2}}).validate(P(3, 1, 0), d), Error);
  CHECK_THROWS_AS(P(3, 1, 2).validate(), Error);
}

TEST_CASE("neighbors of a two-party configuration") {
  auto d = Domain::numeric(2);
  auto i = cfg({{0, 0}, {1, 0}});
  auto nb = neighbors(i, P(3, 1, 1), d);
  CHECK(nb.size() == 7);
  CHECK(std::find(nb.begin(), nb.end(), i) != nb.end());

  auto j = cfg({{2, 1}, {3, 0}});
  auto nb4 = neighbors(cfg({{0, 1}, {1, 1}}), P(4, 2, 0), d);
  CHECK(std::find(nb4.begin(), nb4.end(), j) != nb4.end());
}

TEST_CASE("similar sets") {
  auto d = Domain::numeric(2);
  auto i = cfg({{0, 0}, {1, 0}});
  CHECK(similar(i, P(3, 1, 1), d).size() == 7);
  auto s = similar(i, P(3, 1, 0), d);
  CHECK(as_set(s, 3) == std::set<oracle::Vec>{{0, 0, -1}, {0, 0, 0}, {0, 0, 1}});
}

TEST_CASE("neighbors and similar match the brute-force oracle") {
  for (int n = 2; n <= 4; ++n)
    for (int ts = 1; ts < n && ts <= 2; ++ts)
      for (int ta = 0; ta <= ts; ++ta)
        for (int v = 1; v <= 2; ++v) {
          auto params = P(n, ts, ta);
          auto d = Domain::numeric(v);
          auto all = oracle::configs(n, ts, v);
          for (const auto &iv : all) {
            auto i = oracle::to_config(iv);
            std::set<oracle::Vec> want_nb, want_sim;
            for (const auto &jv : all) {
              if (oracle::is_neighbor(iv, jv)) want_nb.insert(jv);
              if (oracle::is_similar(iv, jv, n, ta)) want_sim.insert(jv);
            }
            auto nb = neighbors(i, params, d);
            auto sim = similar(i, params, d);
            REQUIRE(as_set(nb, n) == want_nb);
            REQUIRE(as_set(sim, n) == want_sim);
            CHECK(nb.size() == want_nb.size());
            CHECK(want_sim.count(iv) == 1);
          }
        }
}

TEST_CASE("neighbor relation is symmetric") {
  auto d = Domain::numeric(2);
  for (int n = 2; n <= 4; ++n) {
    auto params = P(n, 1, 0);
    auto all = enumerate_input_configs(params, d);
    std::set<std::pair<std::string, std::string>> rel;
    for (const auto &i : all)
      for (const auto &j : neighbors(i, params, d)) rel.insert({i.encode(d), j.encode(d)});
    for (const auto &[a, b] : rel) CHECK(rel.count({b, a}) == 1);
  }
}

TEST_CASE("monotone closure") {
  auto d = Domain::numeric(2);
  auto params = P(3, 1, 0);
  auto closed = monotone_closure(strong_validity(d));
  // A unanimous sub-configuration pins the closure of a mixed one.
  CHECK(outputs(closed, params, cfg({{0, 0}, {1, 0}, {2, 1}})) == oracle::Outputs{0});
  CHECK(outputs(closed, params, cfg({{0, 0}, {1, 1}, {2, 0}})) == oracle::Outputs{0});
  CHECK(outputs(closed, params, cfg({{0, 0}, {1, 1}})) == oracle::Outputs{0, 1});
  CHECK(outputs(closed, params, cfg({{0, 1}, {1, 1}, {2, 1}})) == oracle::Outputs{1});

  auto constant = constant_validity(d, 1);
  auto cc = monotone_closure(constant);
  for (const auto &c : enumerate_input_configs(params, d))
    CHECK(cc(params, c) == constant(params, c));

  auto weak = monotone_closure(weak_validity(d));
  CHECK(outputs(weak, params, cfg({{0, 0}, {1, 0}, {2, 0}})) == oracle::Outputs{0});
  CHECK(outputs(weak, params, cfg({{0, 0}, {1, 0}})) == oracle::Outputs{0, 1});
}

TEST_CASE("monotone closure matches the brute-force intersection") {
  auto d = Domain::numeric(2);
  for (int n = 2; n <= 4; ++n)
    for (int ts = 1; ts < n; ++ts) {
      auto params = P(n, ts, 0);
      auto ref = oracle::strong(2);
      auto closed = monotone_closure(strong_validity(d));
      auto all = oracle::configs(n, ts, 2);
      for (const auto &iv : all) {
        oracle::Outputs want = oracle::all_outputs(2);
        for (const auto &jv : all)
          if (oracle::is_sub(jv, iv)) want = oracle::intersect(want, ref(jv));
        CHECK(outputs(closed, params, oracle::to_config(iv)) == want);
      }
    }
}

TEST_CASE("monotone closure is antitone") {
  auto d = Domain::numeric(3);
  auto params = P(4, 2, 1);
  auto v = monotone_closure(interval_hull({0, 2}));
  auto all = enumerate_input_configs(params, d);
  for (const auto &i : all)
    for (const auto &j : all)
      if (i.includes(j)) CHECK(v(params, i).subset_of(v(params, j)));
}

TEST_CASE("triviality") {
  auto d = Domain::numeric(2);
  auto params = P(3, 1, 0);
  auto t = is_trivial(constant_validity(Domain::numeric(3), 2), params, Domain::numeric(3));
  CHECK(t.trivial);
  CHECK(t.common_value == 2);
  CHECK_FALSE(is_trivial(strong_validity(d), params, d).trivial);
  CHECK_FALSE(is_trivial(weak_validity(d), params, d).trivial);
  CHECK_FALSE(is_trivial_maximal(strong_validity(d), params, d));

  // Output 0 unless every party is present with input 1.
  ValidityProperty zero_unless_all_one{
      "zero-unless-all-one", [](const SystemParams &p, const InputConfiguration &c) {
        int v = -1;
        if (c.is_maximal(p.n) && c.is_unanimous(&v) && v == 1) return OutputSet::single(1);
        return OutputSet::single(0);
      }};
  CHECK_FALSE(is_trivial(zero_unless_all_one, params, d).trivial);
  CHECK_FALSE(is_trivial_maximal(zero_unless_all_one, params, d));

  // Only sub-maximal configurations pin the output: trivial on maximal ones.
  ValidityProperty pinned_small{
      "pinned-small", [](const SystemParams &p, const InputConfiguration &c) {
        if (!c.is_maximal(p.n)) return OutputSet::single(static_cast<int>(c.size() % 2));
        return OutputSet::all(2);
      }};
  CHECK_FALSE(is_trivial(pinned_small, P(4, 2, 0), d).trivial);
  CHECK(is_trivial_maximal(pinned_small, P(4, 2, 0), d));
}

TEST_CASE("triviality implies maximal triviality") {
  auto d = Domain::numeric(2);
  std::vector<ValidityProperty> props = {strong_validity(d), weak_validity(d),
                                         constant_validity(d, 0), interval_hull({0, 1})};
  for (const auto &v : props)
    for (int n = 2; n <= 4; ++n)
      for (int ts = 1; ts < n; ++ts) {
        auto params = P(n, ts, 0);
        if (is_trivial(v, params, d).trivial) CHECK(is_trivial_maximal(v, params, d));
      }
}

TEST_CASE("similarity certificate for strong validity") {
  auto d = Domain::numeric(2);
  auto params = P(4, 1, 1);
  auto v = strong_validity(d);
  auto cr = compute_similarity_certificate(v, params, d);
  REQUIRE(cr.certificate);
  CHECK(cr.certificate->size() == 48);
  CHECK(cr.certificate->lookup(cfg({{0, 0}, {1, 0}, {2, 0}, {3, 0}})) == 0);
  CHECK(cr.certificate->lookup(cfg({{0, 1}, {1, 1}, {2, 1}, {3, 1}})) == 1);
  auto check = validate_certificate(v, *cr.certificate);
  CHECK(check.ok);

  auto round = SimilarityCertificate::from_json(cr.certificate->to_json());
  CHECK(round.entries() == cr.certificate->entries());
  CHECK(round.params() == params);
  CHECK(round.to_json() == cr.certificate->to_json());
}

TEST_CASE("similarity certificate matches the oracle's smallest choice") {
  struct Case {
    ValidityProperty prop;
    oracle::Prop ref;
    Domain domain;
    SystemParams params;
  };
  auto d2 = Domain::numeric(2), d3 = Domain::numeric(3);
  std::vector<Case> cases = {
      {strong_validity(d2), oracle::strong(2), d2, P(4, 1, 1)},
      {strong_validity(d3), oracle::strong(3), d3, P(5, 2, 0)},
      {weak_validity(d2), oracle::weak(2), d2, P(4, 1, 1)},
      {interval_hull({0, 2}), oracle::interval(), d3, P(4, 1, 1)},
      {clique_hull({3}), oracle::clique(), clique_domain({3}), P(4, 1, 0)},
      {clique_hull({2}), oracle::clique(), clique_domain({2}), P(4, 1, 1)},
  };
  for (const auto &c : cases) {
    auto values = c.domain.input_size(), outs = c.domain.output_size();
    auto ref = oracle::similarity_sets(c.ref, c.params.n, c.params.ts, c.params.ta, values, outs);
    auto cr = compute_similarity_certificate(c.prop, c.params, c.domain);
    bool feasible = std::all_of(ref.begin(), ref.end(), [](auto &e) { return !e.second.empty(); });
    CAPTURE(c.prop.name);
    REQUIRE(cr.certificate.has_value() == feasible);
    if (!feasible) {
      auto w = oracle::to_vec(*cr.witness, c.params.n);
      auto it = std::find_if(ref.begin(), ref.end(), [&](auto &e) { return e.first == w; });
      REQUIRE(it != ref.end());
      CHECK(it->second.empty());
      continue;
    }
    CHECK(cr.certificate->size() == ref.size());
    for (const auto &[iv, set] : ref)
      CHECK(cr.certificate->lookup(oracle::to_config(iv)) == *set.begin());
  }
}

TEST_CASE("clique hull certificates") {
  auto d = clique_domain({3});
  auto v = clique_hull({3});
  auto bad = compute_similarity_certificate(v, P(6, 2, 0), d);
  REQUIRE_FALSE(bad.certificate);
  REQUIRE(bad.witness);
  CHECK(bad.witness->is_maximal(6));
  // Each vertex held by exactly two parties.
  std::map<int, int> per_value;
  for (const auto &a : bad.witness->assignments()) per_value[a.value]++;
  CHECK(per_value == std::map<int, int>{{0, 2}, {1, 2}, {2, 2}});

  auto good = compute_similarity_certificate(v, P(7, 2, 0), d);
  REQUIRE(good.certificate);
  CHECK(validate_certificate(v, *good.certificate).ok);
}

TEST_CASE("validator rejects a corrupted certificate") {
  auto d = Domain::numeric(2);
  auto params = P(4, 1, 1);
  auto v = strong_validity(d);
  auto cert = *compute_similarity_certificate(v, params, d).certificate;
  auto all_zero = cfg({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  cert.set(all_zero, 1);
  auto check = validate_certificate(v, cert);
  CHECK_FALSE(check.ok);
  REQUIRE(check.counterexample);
}

// The closure is stronger, so a certificate for it is one for the property.
// With ta == ts every sub-configuration of a similar configuration is itself
// similar and existence is unchanged; with ta < ts it can differ.
TEST_CASE("certificate existence under monotone closure") {
  auto d2 = Domain::numeric(2);
  std::vector<ValidityProperty> props = {strong_validity(d2), weak_validity(d2),
                                         interval_hull({0, 1}), clique_hull({2})};
  for (const auto &v : props)
    for (int n = 2; n <= 5; ++n)
      for (int ts = 1; ts <= 2 && ts < n; ++ts)
        for (int ta = 0; ta <= ts; ++ta) {
          auto params = P(n, ts, ta);
          bool plain = compute_similarity_certificate(v, params, d2).certificate.has_value();
          bool closed = compute_similarity_certificate(monotone_closure(v), params, d2)
                            .certificate.has_value();
          CAPTURE(v.name);
          CAPTURE(n);
          CAPTURE(ts);
          CAPTURE(ta);
          if (closed) CHECK(plain);
          if (ta == ts) CHECK(plain == closed);
        }

  // Strong validity, n = 3, ts = 1, ta = 0: {p0=0, p1=1} is similar to both
  // maximal extensions, whose closures are {0} and {1}.
  auto params = P(3, 1, 0);
  CHECK(compute_similarity_certificate(strong_validity(d2), params, d2).certificate);
  auto closed = compute_similarity_certificate(monotone_closure(strong_validity(d2)), params, d2);
  REQUIRE_FALSE(closed.certificate);
  CHECK(closed.witness->size() == 2);
}

TEST_CASE("solvability verdicts") {
  auto d = Domain::numeric(2);
  auto v = is_solvable(strong_validity(d), P(4, 1, 1), d);
  CHECK(v.solvable);
  CHECK(v.reason == Reason::kSimilarityAndNOk);

  v = is_solvable(weak_validity(d), P(4, 2, 0), d);
  CHECK_FALSE(v.solvable);
  CHECK(v.reason == Reason::kNTooSmall);
  CHECK_FALSE(v.witness);

  v = is_solvable(strong_validity(d), P(3, 1, 1), d);
  CHECK(v.reason == Reason::kNTooSmall);

  v = is_solvable(constant_validity(d, 1), P(2, 1, 1), d);
  CHECK(v.solvable);
  CHECK(v.reason == Reason::kTrivial);
  CHECK(v.common_value == 1);

  auto cd = clique_domain({3});
  v = is_solvable(clique_hull({3}), P(6, 2, 0), cd);
  CHECK_FALSE(v.solvable);
  CHECK(v.reason == Reason::kSimilarityFails);
  CHECK(v.witness);

  v = is_solvable(strong_validity(d), P(4, 1, 0, Setup::kNone), d);
  CHECK(v.solvable);
  v = is_solvable(strong_validity(d), P(3, 1, 0, Setup::kNone), d);
  CHECK(v.reason == Reason::kNTooSmall);
}

TEST_CASE("solvability matches the exhaustive oracle on small grids") {
  for (auto setup : {Setup::kPki, Setup::kNone})
    for (int n = 2; n <= 5; ++n)
      for (int ts = 1; ts <= 2 && ts < n; ++ts)
        for (int ta = 0; ta <= ts; ++ta) {
          auto params = P(n, ts, ta, setup);
          auto d2 = Domain::numeric(2);
          CAPTURE(n);
          CAPTURE(ts);
          CAPTURE(ta);
          CHECK(is_solvable(strong_validity(d2), params, d2).solvable ==
                oracle::solvable(oracle::strong(2), n, ts, ta, setup, 2, 2));
          CHECK(is_solvable(weak_validity(d2), params, d2).solvable ==
                oracle::solvable(oracle::weak(2), n, ts, ta, setup, 2, 2));
          auto c3 = clique_domain({3});
          CHECK(is_solvable(clique_hull({3}), params, c3).solvable ==
                oracle::solvable(oracle::clique(), n, ts, ta, setup, 3, 3));
        }
}

TEST_CASE("results are deterministic") {
  auto d = Domain::numeric(3);
  auto v = interval_hull({0, 2});
  auto a = compute_similarity_certificate(v, P(4, 1, 1), d);
  auto b = compute_similarity_certificate(v, P(4, 1, 1), d);
  REQUIRE(a.certificate);
  CHECK(a.certificate->to_json() == b.certificate->to_json());
}
