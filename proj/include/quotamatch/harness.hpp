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

#ifndef QUOTAMATCH_HARNESS_HPP_
#define QUOTAMATCH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quotamatch/market.hpp"
#include "quotamatch/matching.hpp"
#include "quotamatch/metrics.hpp"
#include "quotamatch/policy.hpp"

namespace quotamatch {

// Built-in markets. Example 1 and the 3x3 exploration market carry their
// reference data verbatim; examples 2-4 are drawn from fixed seeds.
enum class BuiltinExample { kOne = 1, kTwo = 2, kThree = 3, kFour = 4, kUcbVsTs = 5 };

Market builtin_market(BuiltinExample example);
std::uint64_t builtin_instance_seed(BuiltinExample example);
std::optional<BuiltinExample> parse_builtin(std::string_view id);

enum class PolicyKind { kThompson, kUcb, kClairvoyant };
std::string_view to_string(PolicyKind policy);
PolicyKind parse_policy(std::string_view name);

enum class DeviationRule { kIdentity, kSwapTopTwo, kReverse, kFixedRanking };
std::string_view to_string(DeviationRule rule);
DeviationRule parse_deviation_rule(std::string_view name);

struct Deviation {
  int firm = 0;
  DeviationRule rule = DeviationRule::kIdentity;
  // kFixedRanking only: [type] -> worker order, best first.
  std::vector<std::vector<int>> fixed_ranking;
};

// Rewrites one firm's submitted scores so the per-type order follows the
// rule. The firm's own values are permuted among its workers, so the
// cross-type comparison still sees the sampled magnitudes.
void apply_deviation(const Deviation& deviation, FirmRankings& rankings);

struct InstanceSource {
  enum class Kind { kBuiltin, kFile, kRandom };

  Kind kind = Kind::kBuiltin;
  BuiltinExample example = BuiltinExample::kOne;
  std::filesystem::path path;
  std::uint64_t seed = 0;
  MarketConfig dims;
  // kRandom only: draw a fresh instance for every trial from the trial's
  // instance stream instead of using `seed` once.
  bool resample_per_trial = false;
};

struct ExperimentSpec {
  InstanceSource source;
  PolicyKind policy = PolicyKind::kThompson;
  int trials = 100;
  int horizon = 2000;
  std::optional<Deviation> deviation;
  std::filesystem::path output_dir;  // empty: no files
  std::uint64_t master_seed = 42;
  BetaPrior prior;
  std::optional<double> ucb_delta;   // default 2 / (Q T)
  int threads = 0;                   // 0: hardware concurrency
  bool write_trial_csv = true;
};

// Resolves the instance a trial plays.
Market resolve_market(const InstanceSource& source, std::uint64_t master_seed,
                      int trial);

// Learner behind the submitted scores.
class PreferenceLearner {
 public:
  virtual ~PreferenceLearner() = default;
  virtual ScoreTable submit(int round, Rng& rng) = 0;
  virtual void observe(std::span<const RewardSample> rewards) = 0;
  virtual const PosteriorState* posterior() const { return nullptr; }
  virtual const UcbState* ucb() const { return nullptr; }
};

std::unique_ptr<PreferenceLearner> make_learner(PolicyKind policy,
                                                const Market& market,
                                                const ExperimentSpec& spec);

struct RoundRecord {
  Matching matching;
  std::vector<RewardSample> rewards;
  bool stable = true;
  std::vector<double> regret;  // [firm * n_types + type]
};

struct TrialState {
  std::unique_ptr<PreferenceLearner> learner;
  Rng sampling_rng;
  Rng reward_rng;
};

// Sample -> rank -> double match -> rewards -> learner update. Throws
// kStabilityViolation, with the matching dumped in the message, if the round
// has a blocking pair under the submitted preferences.
RoundRecord run_round(TrialState& state, const Market& market,
                      const Matching& oracle, int round,
                      const std::optional<Deviation>& deviation);

struct TrialTrajectory {
  int trial = 0;
  std::vector<RoundRecord> rounds;
  RegretLedger ledger;
  std::optional<PosteriorState> final_posterior;
  std::optional<UcbState> final_ucb;
};

TrialTrajectory run_trial(const ExperimentSpec& spec, int trial_index);

struct TrialSummary {
  int trial = 0;
  RegretLedger ledger;
  double matching_rate = 0.0;
  int envelope_violations = 0;
  std::vector<bool> firm_sublinear;  // per firm
  std::optional<PosteriorState> final_posterior;
};

TrialSummary summarize_trial(const TrialTrajectory& trajectory,
                             const Market& market, const Matching& oracle);

struct ExperimentResult {
  ExperimentSpec spec;
  Market market;  // the instance of trial 0
  Matching oracle;
  std::vector<TrialSummary> trials;  // ordered by trial index
  std::vector<double> bswg;
  std::vector<double> bswg_stderr;
  std::vector<double> bound;

  double mean_matching_rate() const;
  int envelope_violations() const;
  // Mean over trials of a firm's (or a cell's) cumulative curve.
  std::vector<double> mean_firm_curve(int firm) const;
  std::vector<double> mean_cell_curve(int firm, int type) const;
};

// Runs every trial (in parallel when threads allow), aggregates in trial
// order and writes the output files when spec.output_dir is set.
ExperimentResult run_experiment(const ExperimentSpec& spec);

std::string version_string();

}  // namespace quotamatch

#endif  // QUOTAMATCH_HARNESS_HPP_
