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

#include <algorithm>

#include "aba/catalog.hpp"
#include "aba/error.hpp"
#include "oracle.hpp"

using namespace aba;

namespace {

SystemParams P(int n, int ts, int ta) { return SystemParams{n, ts, ta, Setup::kPki}; }

std::vector<std::string> labels(const ValidityProperty &v, const Domain &d,
                                const SystemParams &p, std::string_view enc) {
  std::vector<std::string> out;
  for (int x : v(p, InputConfiguration::decode(enc, d)).values())
    out.push_back(d.output_label(x));
  return out;
}

using L = std::vector<std::string>;

}  // namespace

TEST_CASE("strong validity") {
  auto d = Domain::numeric(2);
  auto v = strong_validity(d);
  CHECK(labels(v, d, P(3, 1, 0), "p0=0;p1=0;p2=0") == L{"0"});
  CHECK(labels(v, d, P(3, 1, 0), "p0=0;p1=1") == L{"0", "1"});
  CHECK(labels(v, d, P(2, 1, 0), "p1=1") == L{"1"});
  CHECK_THROWS_AS(strong_validity(Domain({"0", "1"}, {"0"})), Error);
}

TEST_CASE("weak validity") {
  auto d = Domain::numeric(2);
  auto v = weak_validity(d);
  CHECK(labels(v, d, P(3, 1, 0), "p0=1;p1=1;p2=1") == L{"1"});
  CHECK(labels(v, d, P(3, 1, 0), "p0=1;p1=1") == L{"0", "1"});
  CHECK(labels(v, d, P(3, 1, 0), "p0=1;p1=0;p2=1") == L{"0", "1"});
}

TEST_CASE("intrusion-tolerant strong validity") {
  auto e = catalog_lookup("it-strong", 3);
  const auto &d = e.domain;
  CHECK(d.output_values() == L{"0", "1", "2", "bot"});
  CHECK(labels(e.property, d, P(3, 1, 0), "p0=0;p1=0") == L{"0"});
  CHECK(labels(e.property, d, P(3, 1, 0), "p0=0;p1=1") == L{"0", "1", "bot"});
  CHECK(labels(e.property, d, P(2, 1, 0), "p0=2") == L{"2"});
  CHECK_THROWS_AS(intrusion_tolerant_strong(Domain::numeric(2)), Error);
}

TEST_CASE("interval hull") {
  auto e = catalog_lookup("interval:0:9");
  const auto &d = e.domain;
  CHECK(d.input_size() == 10);
  CHECK(labels(e.property, d, P(2, 0, 0), "p0=2;p1=5") == L{"2", "3", "4", "5"});
  CHECK(labels(e.property, d, P(2, 0, 0), "p0=7;p1=7") == L{"7"});
  CHECK(labels(e.property, d, P(2, 0, 0), "p0=0;p1=9").size() == 10);
}

TEST_CASE("clique hull") {
  auto e = catalog_lookup("clique:3");
  const auto &d = e.domain;
  CHECK(d.input_values() == L{"a", "b", "c"});
  CHECK(labels(e.property, d, P(3, 1, 0), "p0=a;p1=b") == L{"a", "b"});
  CHECK(labels(e.property, d, P(3, 1, 0), "p0=a;p1=a") == L{"a"});
  CHECK(labels(e.property, d, P(3, 1, 0), "p0=a;p1=b;p2=c") == L{"a", "b", "c"});
}

TEST_CASE("catalog names") {
  CHECK(catalog_lookup("strong", 3).domain.input_size() == 3);
  CHECK(catalog_lookup("weak").property.name == "weak");
  CHECK_THROWS_AS(catalog_lookup("nope"), Error);
  CHECK_THROWS_AS(catalog_lookup("interval:5:2"), Error);
  CHECK_THROWS_AS(catalog_lookup("clique:1"), Error);
}

TEST_CASE("catalog properties never return an empty set") {
  std::vector<CatalogEntry> entries = {catalog_lookup("strong", 2), catalog_lookup("weak", 3),
                                       catalog_lookup("it-strong", 2),
                                       catalog_lookup("interval:0:2"),
                                       catalog_lookup("clique:3")};
  for (const auto &e : entries)
    for (const auto &c : enumerate_input_configs(P(3, 2, 0), e.domain))
      CHECK_FALSE(e.property(P(3, 2, 0), c).empty());
}

TEST_CASE("catalog properties agree with reference definitions") {
  auto params = P(4, 2, 0);
  struct Case {
    CatalogEntry entry;
    oracle::Prop ref;
  };
  std::vector<Case> cases = {{catalog_lookup("strong", 3), oracle::strong(3)},
                             {catalog_lookup("weak", 2), oracle::weak(2)},
                             {catalog_lookup("interval:0:2"), oracle::interval()},
                             {catalog_lookup("clique:3"), oracle::clique()}};
  for (const auto &c : cases)
    for (const auto &v : oracle::configs(4, 2, c.entry.domain.input_size())) {
      auto got = c.entry.property(params, oracle::to_config(v)).values();
      CHECK(oracle::Outputs(got.begin(), got.end()) == c.ref(v));
    }
}

TEST_CASE("monotone closure only narrows catalog properties") {
  for (const char *name : {"strong", "weak", "interval:0:2", "clique:3"}) {
    auto e = catalog_lookup(name, 2);
    auto c = monotone_closure(e.property);
    auto params = P(4, 2, 0);
    for (const auto &i : enumerate_input_configs(params, e.domain))
      CHECK(c(params, i).subset_of(e.property(params, i)));
  }
}

TEST_CASE("clique hull solvability follows the closed form") {
  for (int omega = 2; omega <= 3; ++omega)
    for (int n = 3; n <= 7; ++n)
      for (int ts = 1; ts <= 2 && ts < n; ++ts)
        for (int ta = 0; ta <= ts; ++ta) {
          auto params = P(n, ts, ta);
          auto e = catalog_lookup("clique:" + std::to_string(omega));
          bool want = n > std::max({omega * ts, omega * ta + ts, 2 * ts + ta});
          CAPTURE(omega);
          CAPTURE(n);
          CAPTURE(ts);
          CAPTURE(ta);
          CHECK(is_solvable(e.property, params, e.domain).solvable == want);
        }
}

TEST_CASE("strong and weak solvability follow the resilience bound") {
  for (int n = 3; n <= 7; ++n)
    for (int ts = 1; ts <= 2 && ts < n; ++ts)
      for (int ta = 0; ta <= ts; ++ta) {
        auto params = P(n, ts, ta);
        bool want = n > 2 * ts + ta;
        for (const char *name : {"strong", "weak"}) {
          auto e = catalog_lookup(name, 2);
          CHECK(is_solvable(e.property, params, e.domain).solvable == want);
        }
      }
}

TEST_CASE("table properties") {
  const char *text = R"({
    "input_values": ["x", "y"],
    "output_values": ["x", "y", "z"],
    "default": ["z"],
    "table": {"p0=x;p1=x": ["x"], "p0=y;p1=y": ["y", "z"]}
  })";
  auto e = load_table_property(text, "custom");
  CHECK(e.property.name == "custom");
  auto params = SystemParams{2, 0, 0, Setup::kPki};
  CHECK(labels(e.property, e.domain, params, "p0=x;p1=x") == L{"x"});
  CHECK(labels(e.property, e.domain, params, "p0=y;p1=y") == L{"y", "z"});
  CHECK(labels(e.property, e.domain, params, "p0=x;p1=y") == L{"z"});
  CHECK(is_solvable(e.property, params, e.domain).solvable);

  CHECK_THROWS_AS(load_table_property(R"({"input_values": ["x"], "output_values": ["x"]})"),
                  Error);
  CHECK_THROWS_AS(load_table_property(R"({"input_values": ["x"], "output_values": ["x"],
      "default": ["x"], "table": {"p0=q": ["x"]}})"),
                  Error);
}
