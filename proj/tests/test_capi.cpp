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

// Exercises the shared library through its C interface only.

#include <doctest.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "aba/aba.h"

using nlohmann::json;

namespace {

std::string read_data(const std::string &name) {
  std::ifstream in(std::string(ABA_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Ctx {
  aba_context *ctx = aba_context_create();
  ~Ctx() { aba_context_free(ctx); }
};

struct Res {
  aba_result *r = nullptr;
  ~Res() { aba_result_free(r); }
  json body() const { return json::parse(aba_result_json(r)); }
};

const char *kStrong = R"({"validity": "strong", "params": {"n": 4, "ts": 1, "ta": 1}})";
const char *kClique = R"({"validity": "clique:3", "params": {"n": 6, "ts": 2, "ta": 0}})";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(aba_version()) > 0);
  CHECK(std::string(aba_status_name(ABA_OK)) != aba_status_name(ABA_UNSOLVABLE));
  CHECK(std::strlen(aba_status_name(static_cast<aba_status>(99))) > 0);
}

TEST_CASE("check") {
  Ctx c;
  Res ok;
  CHECK(aba_check(c.ctx, kStrong, &ok.r) == ABA_OK);
  CHECK(aba_result_status(ok.r) == ABA_OK);
  CHECK(ok.body().at("solvable") == true);
  CHECK(ok.body().at("input_configs") == 48);

  Res bad;
  CHECK(aba_check(c.ctx, kClique, &bad.r) == ABA_UNSOLVABLE);
  CHECK(bad.body().at("solvable") == false);
  CHECK(bad.body().at("witness") == "p0=a;p1=a;p2=b;p3=b;p4=c;p5=c");
}

TEST_CASE("certificate") {
  Ctx c;
  Res ok;
  CHECK(aba_certificate(c.ctx, kStrong, &ok.r) == ABA_OK);
  CHECK(ok.body().at("sigma").size() == 48);

  Res bad;
  CHECK(aba_certificate(c.ctx, kClique, &bad.r) == ABA_UNSOLVABLE);
  CHECK(bad.body().contains("witness"));
}

TEST_CASE("budget") {
  Ctx c;
  CHECK(aba_context_set_budget(c.ctx, 0, 100) == ABA_CONFIG);
  CHECK(aba_context_set_budget(c.ctx, 10, 1000) == ABA_OK);
  Res r;
  CHECK(aba_check(c.ctx, kStrong, &r.r) == ABA_BUDGET);
  CHECK(std::strlen(aba_result_error(r.r)) > 0);
}

TEST_CASE("run and fuzz") {
  Ctx c;
  aba_context_set_base_dir(c.ctx, ABA_TEST_DATA);
  Res run;
  CHECK(aba_run(c.ctx, read_data("universal_canonical.json").c_str(), &run.r) == ABA_OK);
  CHECK(std::strlen(aba_result_trace(run.r)) > 0);
  CHECK(run.body().is_object());

  Res split;
  CHECK(aba_run(c.ctx, read_data("strawman_split.json").c_str(), &split.r) == ABA_VIOLATION);

  Res fuzz;
  CHECK(aba_fuzz(c.ctx, read_data("universal_async_fuzz.json").c_str(), 5, 1, &fuzz.r) ==
        ABA_OK);
  CHECK(fuzz.body().at("violating_runs") == 0);

  Res none;
  CHECK(aba_fuzz(c.ctx, read_data("universal_async_fuzz.json").c_str(), 0, 1, &none.r) ==
        ABA_CONFIG);
}

TEST_CASE("attack") {
  Ctx c;
  Res r;
  CHECK(aba_attack(c.ctx, read_data("split_brain.json").c_str(), &r.r) == ABA_VIOLATION);
  CHECK(r.body().at("checks").at("cross_disagreement") == true);
}

TEST_CASE("malformed requests") {
  Ctx c;
  Res null_req, garbage, unknown, params;
  CHECK(aba_check(c.ctx, nullptr, &null_req.r) == ABA_CONFIG);
  CHECK(aba_check(c.ctx, "{", &garbage.r) == ABA_CONFIG);
  CHECK(aba_check(c.ctx, R"({"validity": "nope", "params": {"n": 3, "ts": 1, "ta": 0}})",
                  &unknown.r) == ABA_CONFIG);
  CHECK(aba_check(c.ctx, R"({"validity": "strong", "params": {"n": 3, "ts": 1, "ta": 2}})",
                  &params.r) == ABA_CONFIG);
  CHECK(std::strlen(aba_result_error(unknown.r)) > 0);
  Res r;
  CHECK(aba_run(nullptr, "{}", &r.r) != ABA_OK);
  CHECK(aba_check(c.ctx, kStrong, nullptr) == ABA_CONFIG);
  aba_result_free(nullptr);
  aba_context_free(nullptr);
}
