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

/* Exercises the shared library through its C header only, compiled as C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "quotamatch/quotamatch.h"

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,     \
              __LINE__, #cond);                                   \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_builtin_and_oracle(void) {
  qm_market* m = NULL;
  char* oracle = NULL;
  int n_firms = 0, n_types = 0, n_workers = 0;

  CHECK(qm_market_builtin("1", &m) == QM_OK);
  CHECK(qm_market_dims(m, &n_firms, &n_types, &n_workers) == QM_OK);
  CHECK(n_firms == 2 && n_types == 2 && n_workers == 10);
  CHECK(qm_oracle_json(m, &oracle) == QM_OK);
  CHECK(strcmp(oracle, "{\"assignment\":[[[2,4],[1,3,5]],[[1,3,5],[2,4]]]}") == 0);
  qm_string_free(oracle);
  qm_market_free(m);
}

static void test_stability_check(void) {
  qm_market* m = NULL;
  int stable = -1;
  char* report = NULL;

  CHECK(qm_market_builtin("ucb-vs-ts", &m) == QM_OK);
  CHECK(qm_stability_check(m, "{\"assignment\":[[[2]],[[1]],[[3]]]}", &stable,
                           NULL) == QM_OK);
  CHECK(stable == 1);
  CHECK(qm_stability_check(m, "{\"assignment\":[[[2]],[[3]],[[1]]]}", &stable,
                           &report) == QM_OK);
  CHECK(stable == 0);
  CHECK(report != NULL && strstr(report, "\"pairs\"") != NULL);
  qm_string_free(report);

  CHECK(qm_stability_check(m, "not json", &stable, NULL) == QM_ERR_PARSE);
  CHECK(strlen(qm_last_error()) > 0);
  qm_market_free(m);
}

static void test_enumerate(void) {
  qm_market* m = NULL;
  char* out = NULL;
  CHECK(qm_market_builtin("ucb-vs-ts", &m) == QM_OK);
  CHECK(qm_enumerate_stable(m, 0, &out) == QM_OK);
  CHECK(strstr(out, "\"count\": 2") != NULL);
  qm_string_free(out);
  qm_market_free(m);

  CHECK(qm_market_builtin("1", &m) == QM_OK);
  CHECK(qm_enumerate_stable(m, 10, &out) == QM_ERR_TOO_LARGE);
  qm_market_free(m);
}

static void test_errors(void) {
  qm_market* m = NULL;
  CHECK(qm_market_builtin("42", &m) == QM_ERR_INVALID_ARGUMENT);
  CHECK(m == NULL);
  CHECK(qm_market_load("/nonexistent/instance.json", &m) == QM_ERR_IO);
  CHECK(qm_market_from_json(
            "{\"n_firms\":1,\"workers_per_type\":[1],\"type_quota\":[[2]],"
            "\"total_quota\":[1],\"firm_scores\":[[[0.5]]],"
            "\"worker_ranks\":[[[1]]]}",
            &m) == QM_ERR_INVALID_INSTANCE);
  CHECK(qm_market_builtin(NULL, &m) == QM_ERR_INVALID_ARGUMENT);
  CHECK(strcmp(qm_status_name(QM_ERR_UNKNOWN_RULE), "unknown-rule") == 0);
  CHECK(qm_run_experiment(
            "{\"instance\":{\"builtin\":\"1\"},\"deviation\":{\"firm\":1,"
            "\"rule\":\"bribe\"}}",
            NULL) == QM_ERR_UNKNOWN_RULE);
}

static void test_random_and_roundtrip(void) {
  qm_market* a = NULL;
  qm_market* b = NULL;
  char* ja = NULL;
  char* jb = NULL;
  CHECK(qm_market_random(7,
                         "{\"n_firms\":2,\"workers_per_type\":[3,2],"
                         "\"type_quota\":[[1,0],[0,1]],\"total_quota\":[2,2]}",
                         &a) == QM_OK);
  CHECK(qm_market_to_json(a, &ja) == QM_OK);
  CHECK(qm_market_from_json(ja, &b) == QM_OK);
  CHECK(qm_market_to_json(b, &jb) == QM_OK);
  CHECK(strcmp(ja, jb) == 0);
  qm_string_free(ja);
  qm_string_free(jb);
  qm_market_free(a);
  qm_market_free(b);
}

static void test_bound_and_experiment(void) {
  double bound = 0.0;
  char* summary = NULL;
  CHECK(qm_regret_bound(10, 5, 2, 10, 2000, &bound) == QM_OK);
  CHECK(fabs(bound - (80.0 * log(20000.0) * 100.0 + 2.0)) < 1e-6);
  CHECK(qm_regret_bound(0, 5, 2, 10, 2000, &bound) == QM_ERR_INVALID_ARGUMENT);

  CHECK(qm_run_experiment("{\"instance\":{\"builtin\":\"1\"},\"trials\":2,"
                          "\"horizon\":50}",
                          &summary) == QM_OK);
  CHECK(summary != NULL && strstr(summary, "\"bswg\"") != NULL);
  qm_string_free(summary);
  CHECK(strlen(qm_version()) > 0);
}

int main(void) {
  test_builtin_and_oracle();
  test_stability_check();
  test_enumerate();
  test_errors();
  test_random_and_roundtrip();
  test_bound_and_experiment();
  if (failures) fprintf(stderr, "%d checks failed\n", failures);
  return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
