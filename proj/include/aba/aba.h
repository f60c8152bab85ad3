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

/*
 * C interface of libaba. Requests and results are JSON documents; the
 * formats are described in docs/scenario.md.
 *
 * Every entry point that takes `aba_result **out` stores a result there
 * (also on failure, carrying the error text) unless `out` is NULL. Results
 * are owned by the caller and released with aba_result_free().
 */

#ifndef ABA_ABA_H_
#define ABA_ABA_H_

#include <stdint.h>

#if defined(ABA_BUILDING_LIBRARY)
#define ABA_API __attribute__((visibility("default")))
#else
#define ABA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum aba_status {
  ABA_OK = 0,
  ABA_VIOLATION = 1,  /* a run broke agreement, validity or the ACS contract */
  ABA_CONFIG = 2,     /* malformed request, unknown names, bad parameters */
  ABA_UNSOLVABLE = 3, /* the validity property is not solvable */
  ABA_BUDGET = 4,     /* enumeration exceeded the configured budget */
  ABA_INTERNAL = 5
} aba_status;

typedef struct aba_context aba_context;
typedef struct aba_result aba_result;

ABA_API const char *aba_version(void);
ABA_API const char *aba_status_name(aba_status status);

/* Budget defaults come from the ABA_BUDGET environment variable
 * ("<configs>" or "<configs>:<pair checks>") when set. */
ABA_API aba_context *aba_context_create(void);
ABA_API void aba_context_free(aba_context *ctx);
ABA_API aba_status aba_context_set_budget(aba_context *ctx, uint64_t max_configs,
                                          uint64_t max_pair_checks);
/* Directory against which relative file references are resolved. */
ABA_API aba_status aba_context_set_base_dir(aba_context *ctx, const char *dir);

/* Every call below stores a result in *out, which must be non-null; free it
 * with aba_result_free(). */

/* {"validity", "params": {"n", "ts", "ta", "setup"}, "values", "table"} */
ABA_API aba_status aba_check(aba_context *ctx, const char *request_json,
                             aba_result **out);
/* Same request; the result JSON is the certificate. */
ABA_API aba_status aba_certificate(aba_context *ctx, const char *request_json,
                                   aba_result **out);
/* One scenario run; the result carries the summary and the JSONL trace. */
ABA_API aba_status aba_run(aba_context *ctx, const char *scenario_json,
                           aba_result **out);
ABA_API aba_status aba_fuzz(aba_context *ctx, const char *scenario_json,
                            int seeds, uint64_t first_seed, aba_result **out);
ABA_API aba_status aba_attack(aba_context *ctx, const char *attack_json,
                              aba_result **out);

ABA_API aba_status aba_result_status(const aba_result *result);
/* Empty strings when absent; valid until aba_result_free(). */
ABA_API const char *aba_result_json(const aba_result *result);
ABA_API const char *aba_result_trace(const aba_result *result);
ABA_API const char *aba_result_error(const aba_result *result);
ABA_API void aba_result_free(aba_result *result);

#ifdef __cplusplus
}
#endif

#endif /* ABA_ABA_H_ */
