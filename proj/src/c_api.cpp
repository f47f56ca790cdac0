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

#include "quotamatch/quotamatch.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "quotamatch/error.hpp"
#include "quotamatch/harness.hpp"
#include "quotamatch/io.hpp"
#include "quotamatch/metrics.hpp"
#include "quotamatch/verifier.hpp"

struct qm_market {
  quotamatch::Market market;
};

namespace {

using quotamatch::ErrorCode;

thread_local std::string g_last_error;

qm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kWorkerInOracleSet:
    case ErrorCode::kNonBinaryReward:
      return QM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kQuotaInfeasible:
    case ErrorCode::kNonPermutation:
    case ErrorCode::kScoreOutOfRange:
      return QM_ERR_INVALID_INSTANCE;
    case ErrorCode::kInstanceTooLarge:
      return QM_ERR_TOO_LARGE;
    case ErrorCode::kStabilityViolation:
      return QM_ERR_STABILITY_VIOLATION;
    case ErrorCode::kUnknownRule:
      return QM_ERR_UNKNOWN_RULE;
    case ErrorCode::kUnsupported:
      return QM_ERR_UNSUPPORTED;
    case ErrorCode::kIo:
      return QM_ERR_IO;
    case ErrorCode::kParse:
      return QM_ERR_PARSE;
  }
  return QM_ERR_INTERNAL;
}

qm_status fail(qm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
qm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QM_OK;
  } catch (const quotamatch::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(QM_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QM_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw quotamatch::Error(ErrorCode::kInvalidArgument, what);
}

qm_status emit(quotamatch::Market market, qm_market** out) {
  *out = new qm_market{std::move(market)};
  return QM_OK;
}

}  // namespace

extern "C" {

const char* qm_version(void) {
  static const std::string version = quotamatch::version_string();
  return version.c_str();
}

const char* qm_status_name(qm_status status) {
  switch (status) {
    case QM_OK: return "ok";
    case QM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case QM_ERR_INVALID_INSTANCE: return "invalid-instance";
    case QM_ERR_IO: return "io";
    case QM_ERR_PARSE: return "parse";
    case QM_ERR_TOO_LARGE: return "too-large";
    case QM_ERR_STABILITY_VIOLATION: return "stability-violation";
    case QM_ERR_UNKNOWN_RULE: return "unknown-rule";
    case QM_ERR_UNSUPPORTED: return "unsupported";
    case QM_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qm_last_error(void) { return g_last_error.c_str(); }

void qm_string_free(char* str) { std::free(str); }

qm_status qm_market_builtin(const char* id, qm_market** out) {
  return guarded([&] {
    require(id != nullptr && out != nullptr, "null argument");
    const auto example = quotamatch::parse_builtin(id);
    if (!example) {
      throw quotamatch::Error(ErrorCode::kInvalidArgument,
                              std::string("unknown built-in example '") + id + "'");
    }
    emit(quotamatch::builtin_market(*example), out);
  });
}

qm_status qm_market_load(const char* path, qm_market** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    emit(quotamatch::read_market_file(path), out);
  });
}

qm_status qm_market_from_json(const char* json, qm_market** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    emit(quotamatch::market_from_json(nlohmann::json::parse(json)), out);
  });
}

qm_status qm_market_random(uint64_t seed, const char* dims_json, qm_market** out) {
  return guarded([&] {
    require(dims_json != nullptr && out != nullptr, "null argument");
    auto config = quotamatch::config_from_json(nlohmann::json::parse(dims_json));
    auto prefs = quotamatch::generate_random_instance(seed, config);
    emit(quotamatch::Market(std::move(config), std::move(prefs)), out);
  });
}

qm_status qm_market_save(const qm_market* market, const char* path) {
  return guarded([&] {
    require(market != nullptr && path != nullptr, "null argument");
    quotamatch::write_market_file(market->market, path);
  });
}

qm_status qm_market_to_json(const qm_market* market, char** out) {
  return guarded([&] {
    require(market != nullptr && out != nullptr, "null argument");
    *out = dup_string(quotamatch::market_to_json(market->market).dump(2));
  });
}

qm_status qm_market_dims(const qm_market* market, int* n_firms, int* n_types,
                         int* n_workers) {
  return guarded([&] {
    require(market != nullptr, "null market");
    const auto& config = market->market.config();
    if (n_firms) *n_firms = config.n_firms;
    if (n_types) *n_types = config.n_types();
    if (n_workers) *n_workers = config.total_workers();
  });
}

void qm_market_free(qm_market* market) { delete market; }

qm_status qm_oracle_json(const qm_market* market, char** out) {
  return guarded([&] {
    require(market != nullptr && out != nullptr, "null argument");
    const auto oracle = quotamatch::firm_optimal_oracle(market->market);
    *out = dup_string(quotamatch::matching_to_json(oracle).dump());
  });
}

qm_status qm_stability_check(const qm_market* market, const char* matching_json,
                             int* stable, char** report) {
  return guarded([&] {
    require(market != nullptr && matching_json != nullptr && stable != nullptr,
            "null argument");
    const auto& m = market->market;
    const auto matching =
        quotamatch::matching_from_json(nlohmann::json::parse(matching_json), m.config());
    const auto rankings = quotamatch::FirmRankings::from_scores(m.prefs().firm_scores);
    const auto result = quotamatch::find_blocking_pairs(matching, rankings, m);
    *stable = result.stable() ? 1 : 0;
    if (report) *report = dup_string(quotamatch::blocking_report_to_json(result).dump(2));
  });
}

qm_status qm_enumerate_stable(const qm_market* market, uint64_t cap, char** out) {
  return guarded([&] {
    require(market != nullptr && out != nullptr, "null argument");
    const auto& m = market->market;
    const auto all = quotamatch::enumerate_stable_matchings(
        m, cap == 0 ? quotamatch::kDefaultEnumerationCap : cap);
    const auto oracle = quotamatch::firm_optimal_oracle(m);
    nlohmann::json list = nlohmann::json::array();
    for (const auto& s : all) list.push_back(quotamatch::matching_to_json(s));
    const auto it = std::find(all.begin(), all.end(), oracle);
    const long index = it == all.end() ? -1 : static_cast<long>(it - all.begin());
    nlohmann::json doc = {{"count", all.size()},
                          {"firm_optimal", index},
                          {"matchings", std::move(list)}};
    *out = dup_string(doc.dump(2));
  });
}

qm_status qm_regret_bound(int total_quota, int max_workers_per_type, int n_firms,
                          int n_workers, int round, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = quotamatch::regret_bound(total_quota, max_workers_per_type, n_firms,
                                    n_workers, round);
  });
}

qm_status qm_run_experiment(const char* spec_json, char** summary_json) {
  return guarded([&] {
    require(spec_json != nullptr, "null argument");
    const auto spec = quotamatch::spec_from_json(nlohmann::json::parse(spec_json));
    const auto result = quotamatch::run_experiment(spec);
    if (summary_json) *summary_json = dup_string(quotamatch::summary_to_json(result).dump(2));
  });
}

}  // extern "C"
