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

#include "aba/aba.h"

#include <exception>
#include <new>
#include <string>

#include <json.hpp>

#include "aba/error.hpp"
#include "aba/scenario.hpp"
#include "aba/validity.hpp"

struct aba_context {
  aba::Budget budget;
  std::string base_dir = ".";
};

struct aba_result {
  aba_status status = ABA_OK;
  std::string json;
  std::string trace;
  std::string error;
};

namespace {

using nlohmann::json;

aba_status status_of(aba::ErrorCode code) {
  switch (code) {
    case aba::ErrorCode::kBudgetExceeded: return ABA_BUDGET;
    case aba::ErrorCode::kMissingSigmaEntry: return ABA_INTERNAL;
    case aba::ErrorCode::kInvalidArgument:
    case aba::ErrorCode::kDomainMismatch:
    case aba::ErrorCode::kSetupUnavailable:
    case aba::ErrorCode::kConfig: return ABA_CONFIG;
  }
  return ABA_INTERNAL;
}

// Runs `body` against a fresh result and converts exceptions to statuses.
template <class Body>
aba_status guarded(const char *request, aba_result **out, Body body) {
  if (!out) return ABA_CONFIG;
  aba_result *result = new (std::nothrow) aba_result;
  if (!result) return ABA_INTERNAL;
  try {
    if (!request) throw aba::Error(aba::ErrorCode::kConfig, "null request");
    result->status = body(*result);
  } catch (const aba::Error &e) {
    result->status = status_of(e.code());
    result->error = std::string(aba::to_string(e.code())) + ": " + e.what();
  } catch (const std::bad_alloc &) {
    result->status = ABA_INTERNAL;
    result->error = "out of memory";
  } catch (const std::exception &e) {
    result->status = ABA_INTERNAL;
    result->error = e.what();
  }
  *out = result;
  return result->status;
}

json params_json(const aba::SystemParams &p) {
  return {{"n", p.n}, {"ts", p.ts}, {"ta", p.ta}, {"setup", aba::to_string(p.setup)}};
}

const std::string &base_dir(const aba_context *ctx) {
  static const std::string kDot = ".";
  return ctx ? ctx->base_dir : kDot;
}

aba::Budget budget(const aba_context *ctx) {
  return ctx ? ctx->budget : aba::Budget::from_env();
}

}  // namespace

extern "C" {

const char *aba_version(void) { return "1.0.0"; }

const char *aba_status_name(aba_status status) {
  switch (status) {
    case ABA_OK: return "OK";
    case ABA_VIOLATION: return "VIOLATION";
    case ABA_CONFIG: return "CONFIG";
    case ABA_UNSOLVABLE: return "UNSOLVABLE";
    case ABA_BUDGET: return "BUDGET";
    case ABA_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

aba_context *aba_context_create(void) {
  auto *ctx = new (std::nothrow) aba_context;
  if (!ctx) return nullptr;
  try {
    ctx->budget = aba::Budget::from_env();
  } catch (const std::exception &) {
    // A malformed ABA_BUDGET keeps the defaults; the CLI reports it.
  }
  return ctx;
}

void aba_context_free(aba_context *ctx) { delete ctx; }

aba_status aba_context_set_budget(aba_context *ctx, uint64_t max_configs,
                                  uint64_t max_pair_checks) {
  if (!ctx || max_configs == 0 || max_pair_checks == 0) return ABA_CONFIG;
  ctx->budget.max_configs = max_configs;
  ctx->budget.max_pair_checks = max_pair_checks;
  return ABA_OK;
}

aba_status aba_context_set_base_dir(aba_context *ctx, const char *dir) {
  if (!ctx || !dir) return ABA_CONFIG;
  ctx->base_dir = *dir ? dir : ".";
  return ABA_OK;
}

aba_status aba_check(aba_context *ctx, const char *request_json, aba_result **out) {
  return guarded(request_json, out, [&](aba_result &r) {
    auto req = aba::scenario::parse_property_request(request_json, base_dir(ctx));
    auto verdict = aba::is_solvable(req.property, req.params, req.domain, budget(ctx));
    json doc = {{"validity", req.property.name},
                {"params", params_json(req.params)},
                {"solvable", verdict.solvable},
                {"reason", aba::to_string(verdict.reason)},
                {"resilience_bound_holds", aba::resilience_bound_holds(req.params)},
                {"input_configs", aba::count_input_configs(req.params, req.domain)}};
    if (verdict.witness) doc["witness"] = verdict.witness->encode(req.domain);
    if (verdict.common_value)
      doc["common_value"] = req.domain.output_label(*verdict.common_value);
    r.json = doc.dump();
    return verdict.solvable ? ABA_OK : ABA_UNSOLVABLE;
  });
}

aba_status aba_certificate(aba_context *ctx, const char *request_json,
                           aba_result **out) {
  return guarded(request_json, out, [&](aba_result &r) {
    auto req = aba::scenario::parse_property_request(request_json, base_dir(ctx));
    auto cr = aba::compute_similarity_certificate(req.property, req.params,
                                                  req.domain, budget(ctx));
    if (!cr.certificate) {
      std::string witness = cr.witness->encode(req.domain);
      r.json = json{{"validity", req.property.name},
                    {"params", params_json(req.params)},
                    {"reason", "SIMILARITY_FAILS"},
                    {"witness", witness}}
                   .dump();
      r.error = "SIMILARITY_FAILS: no output is valid for every configuration "
                "similar to " + witness;
      return ABA_UNSOLVABLE;
    }
    r.json = cr.certificate->to_json();
    return ABA_OK;
  });
}

aba_status aba_run(aba_context *ctx, const char *scenario_json, aba_result **out) {
  return guarded(scenario_json, out, [&](aba_result &r) {
    auto s = aba::scenario::parse_scenario(scenario_json, base_dir(ctx), budget(ctx));
    auto summary = aba::scenario::run_scenario(s, true);
    r.json = summary.to_json(s);
    r.trace = std::move(summary.trace_jsonl);
    return summary.clean() ? ABA_OK : ABA_VIOLATION;
  });
}

aba_status aba_fuzz(aba_context *ctx, const char *scenario_json, int seeds,
                    uint64_t first_seed, aba_result **out) {
  return guarded(scenario_json, out, [&](aba_result &r) {
    if (seeds <= 0) throw aba::Error(aba::ErrorCode::kConfig, "seeds must be positive");
    auto s = aba::scenario::parse_scenario(scenario_json, base_dir(ctx), budget(ctx));
    auto summary = aba::scenario::fuzz(s, seeds, first_seed);
    r.json = summary.to_json();
    return summary.violating_runs == 0 ? ABA_OK : ABA_VIOLATION;
  });
}

aba_status aba_attack(aba_context *ctx, const char *attack_json, aba_result **out) {
  return guarded(attack_json, out, [&](aba_result &r) {
    auto outcome = aba::scenario::run_attack(attack_json, base_dir(ctx));
    r.json = std::move(outcome.report_json);
    return outcome.violation ? ABA_VIOLATION : ABA_OK;
  });
}

aba_status aba_result_status(const aba_result *result) {
  return result ? result->status : ABA_INTERNAL;
}

const char *aba_result_json(const aba_result *result) {
  return result ? result->json.c_str() : "";
}

const char *aba_result_trace(const aba_result *result) {
  return result ? result->trace.c_str() : "";
}

const char *aba_result_error(const aba_result *result) {
  return result ? result->error.c_str() : "";
}

void aba_result_free(aba_result *result) { delete result; }

}  // extern "C"
