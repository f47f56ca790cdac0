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

#ifndef QUOTAMATCH_IO_HPP_
#define QUOTAMATCH_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "quotamatch/harness.hpp"
#include "quotamatch/market.hpp"
#include "quotamatch/verifier.hpp"

namespace quotamatch {

// Instance documents. See docs/instance.schema.json. All indices 1-based.
nlohmann::json market_to_json(const Market& market);
Market market_from_json(const nlohmann::json& doc);
Market read_market_file(const std::filesystem::path& path);
void write_market_file(const Market& market, const std::filesystem::path& path);

// Dimension-only documents (no preferences), as accepted by random sources.
nlohmann::json config_to_json(const MarketConfig& config);
MarketConfig config_from_json(const nlohmann::json& doc);

// {"assignment": [[[workers of type 1], [workers of type 2], ...], ...]}
// listing firms in order, 1-based worker indices.
nlohmann::json matching_to_json(const Matching& matching);
Matching matching_from_json(const nlohmann::json& doc,
                            const MarketConfig& config);
Matching read_matching_file(const std::filesystem::path& path,
                            const MarketConfig& config);

nlohmann::json blocking_report_to_json(const BlockingReport& report);

ExperimentSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const ExperimentSpec& spec);

// summary.json; see docs/summary.schema.json.
nlohmann::json summary_to_json(const ExperimentResult& result);

// Columns: trial,round,firm,type,inst_regret,cum_regret
void write_trial_csv(std::ostream& out, const TrialSummary& trial);
// Columns: round,mean_bswg,stderr,bound
void write_aggregate_csv(std::ostream& out, const ExperimentResult& result);

// Writes trial_<k>.csv, aggregate.csv, posterior_final.csv (Thompson
// sampling only, trial 1) and summary.json into `dir`.
void export_results(const ExperimentResult& result,
                    const std::filesystem::path& dir);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace quotamatch

#endif  // QUOTAMATCH_IO_HPP_
