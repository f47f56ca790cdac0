// Copyright 2026 The QuotaMatch Authors.
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

/* C interface to the quotamatch library.
 *
 * Every function returns a qm_status. On failure, qm_last_error() returns a
 * message describing the most recent error on the calling thread. Strings
 * returned through `char**` out-parameters are owned by the caller and must
 * be released with qm_string_free(). Worker, firm and type indices in JSON
 * documents are 1-based.
 */
#ifndef QUOTAMATCH_QUOTAMATCH_H_
#define QUOTAMATCH_QUOTAMATCH_H_

#include <stdint.h>

#if defined(QUOTAMATCH_BUILDING_LIBRARY)
#define QM_API __attribute__((visibility("default")))
#else
#define QM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
  QM_OK = 0,
  QM_ERR_INVALID_ARGUMENT = 1,
  QM_ERR_INVALID_INSTANCE = 2,
  QM_ERR_IO = 3,
  QM_ERR_PARSE = 4,
  QM_ERR_TOO_LARGE = 5,
  QM_ERR_STABILITY_VIOLATION = 6,
  QM_ERR_UNKNOWN_RULE = 7,
  QM_ERR_UNSUPPORTED = 8,
  QM_ERR_INTERNAL = 9
} qm_status;

typedef struct qm_market qm_market;

QM_API const char* qm_version(void);
QM_API const char* qm_status_name(qm_status status);
QM_API const char* qm_last_error(void);
QM_API void qm_string_free(char* str);

/* Built-in instances: "1".."4" and "ucb-vs-ts". */
QM_API qm_status qm_market_builtin(const char* id, qm_market** out);
QM_API qm_status qm_market_load(const char* path, qm_market** out);
QM_API qm_status qm_market_from_json(const char* json, qm_market** out);
/* `dims_json` holds n_firms, workers_per_type, type_quota, total_quota. */
QM_API qm_status qm_market_random(uint64_t seed, const char* dims_json,
                                  qm_market** out);
QM_API qm_status qm_market_save(const qm_market* market, const char* path);
QM_API qm_status qm_market_to_json(const qm_market* market, char** out);
QM_API qm_status qm_market_dims(const qm_market* market, int* n_firms,
                                int* n_types, int* n_workers);
QM_API void qm_market_free(qm_market* market);

/* Double matching on the true scores, as a matching document. */
QM_API qm_status qm_oracle_json(const qm_market* market, char** out);

/* Checks a matching document against the true preferences. `*stable` is set
 * to 1 or 0; `report` (optional) receives the blocking pairs as JSON. */
QM_API qm_status qm_stability_check(const qm_market* market,
                                    const char* matching_json, int* stable,
                                    char** report);

/* {"count": n, "firm_optimal": i, "matchings": [...]} with i the 0-based
 * position of the oracle among the sorted stable matchings (or -1). A cap
 * of 0 selects the default. */
QM_API qm_status qm_enumerate_stable(const qm_market* market, uint64_t cap,
                                     char** out);

QM_API qm_status qm_regret_bound(int total_quota, int max_workers_per_type,
                                 int n_firms, int n_workers, int round,
                                 double* out);

/* Runs an experiment described by a spec document and returns summary.json
 * contents. Output files are written when the spec names an output_dir. */
QM_API qm_status qm_run_experiment(const char* spec_json, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* QUOTAMATCH_QUOTAMATCH_H_ */
