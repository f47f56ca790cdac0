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

#include "quotamatch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "quotamatch/io.hpp"
#include "quotamatch/verifier.hpp"

#ifndef QUOTAMATCH_VERSION
#define QUOTAMATCH_VERSION "0.1.0"
#endif

namespace quotamatch {

namespace {

MarketConfig uniform_config(int n_firms, std::vector<int> workers_per_type,
                            std::vector<int> floors, int total_quota) {
  MarketConfig c;
  c.n_firms = n_firms;
  c.workers_per_type = std::move(workers_per_type);
  c.type_quota.assign(n_firms, floors);
  c.total_quota.assign(n_firms, total_quota);
  c.horizon = 2000;
  return c;
}

Market example_one() {
  MarketConfig config = uniform_config(2, {5, 5}, {2, 2}, 5);
  TruePreferences prefs;
  prefs.firm_scores = {
      {{0.406, 0.956, 0.738, 0.970, 0.695}, {0.932, 0.241, 0.040, 0.657, 0.289}},
      {{0.682, 0.909, 0.823, 0.204, 0.218}, {0.303, 0.849, 0.131, 0.886, 0.428}},
  };
  const std::vector<int> p1_first{0, 1};
  const std::vector<int> p2_first{1, 0};
  prefs.worker_ranks = {
      // D1..D5
      {p1_first, p1_first, p2_first, p1_first, p2_first},
      // S1..S5
      {p1_first, p1_first, p2_first, p2_first, p1_first},
  };
  return Market(std::move(config), std::move(prefs));
}

Market example_ucb_vs_ts() {
  MarketConfig config = uniform_config(3, {3}, {1}, 1);
  TruePreferences prefs;
  prefs.firm_scores = {{{0.8, 0.4, 0.2}}, {{0.5, 0.7, 0.2}}, {{0.6, 0.3, 0.65}}};
  prefs.worker_ranks = {{{1, 2, 0}, {0, 1, 2}, {2, 0, 1}}};
  return Market(std::move(config), std::move(prefs));
}

MarketConfig builtin_dims(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kTwo: {
      MarketConfig c = uniform_config(2, {20, 6}, {1, 3}, 6);
      return c;
    }
    case BuiltinExample::kThree:
      return uniform_config(100, {300, 300}, {1, 1}, 3);
    case BuiltinExample::kFour:
      return uniform_config(10, {500, 500}, {10, 10}, 30);
    default:
      throw Error(ErrorCode::kInvalidArgument, "example has fixed data");
  }
}

class ThompsonLearner final : public PreferenceLearner {
 public:
  ThompsonLearner(const MarketConfig& config, BetaPrior prior)
      : state_(config, prior) {}

  ScoreTable submit(int, Rng& rng) override { return ts_sample(state_, rng); }
  void observe(std::span<const RewardSample> rewards) override {
    posterior_update(state_, rewards);
  }
  const PosteriorState* posterior() const override { return &state_; }

 private:
  PosteriorState state_;
};

class UcbLearner final : public PreferenceLearner {
 public:
  UcbLearner(const MarketConfig& config, double delta) : state_(config, delta) {}

  ScoreTable submit(int round, Rng&) override {
    return ucb_indices(state_, round);
  }
  void observe(std::span<const RewardSample> rewards) override {
    ucb_update(state_, rewards);
  }
  const UcbState* ucb() const override { return &state_; }

 private:
  UcbState state_;
};

// Plays the true scores every round; a zero-regret reference.
class ClairvoyantLearner final : public PreferenceLearner {
 public:
  explicit ClairvoyantLearner(ScoreTable truth) : truth_(std::move(truth)) {}

  ScoreTable submit(int, Rng&) override { return truth_; }
  void observe(std::span<const RewardSample>) override {}

 private:
  ScoreTable truth_;
};

std::string dump_matching(const Matching& m) {
  return matching_to_json(m).dump();
}

}  // namespace

Market builtin_market(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kOne:
      return example_one();
    case BuiltinExample::kUcbVsTs:
      return example_ucb_vs_ts();
    case BuiltinExample::kTwo:
    case BuiltinExample::kThree:
    case BuiltinExample::kFour: {
      MarketConfig dims = builtin_dims(example);
      TruePreferences prefs =
          generate_random_instance(builtin_instance_seed(example), dims);
      return Market(std::move(dims), std::move(prefs));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in example");
}

std::uint64_t builtin_instance_seed(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kTwo: return 20002;
    case BuiltinExample::kThree: return 20003;
    case BuiltinExample::kFour: return 20004;
    default: return 0;
  }
}

std::optional<BuiltinExample> parse_builtin(std::string_view id) {
  if (id == "1") return BuiltinExample::kOne;
  if (id == "2") return BuiltinExample::kTwo;
  if (id == "3") return BuiltinExample::kThree;
  if (id == "4") return BuiltinExample::kFour;
  if (id == "ucb-vs-ts" || id == "5") return BuiltinExample::kUcbVsTs;
  return std::nullopt;
}

std::string_view to_string(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::kThompson: return "ts";
    case PolicyKind::kUcb: return "ucb";
    case PolicyKind::kClairvoyant: return "clairvoyant";
  }
  return "?";
}

PolicyKind parse_policy(std::string_view name) {
  if (name == "ts") return PolicyKind::kThompson;
  if (name == "ucb") return PolicyKind::kUcb;
  if (name == "clairvoyant") return PolicyKind::kClairvoyant;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown policy '" + std::string(name) + "'");
}

std::string_view to_string(DeviationRule rule) {
  switch (rule) {
    case DeviationRule::kIdentity: return "identity";
    case DeviationRule::kSwapTopTwo: return "swap-top-two";
    case DeviationRule::kReverse: return "reverse";
    case DeviationRule::kFixedRanking: return "fixed-ranking";
  }
  return "?";
}

DeviationRule parse_deviation_rule(std::string_view name) {
  if (name == "identity") return DeviationRule::kIdentity;
  if (name == "swap-top-two") return DeviationRule::kSwapTopTwo;
  if (name == "reverse") return DeviationRule::kReverse;
  if (name == "fixed-ranking") return DeviationRule::kFixedRanking;
  throw Error(ErrorCode::kUnknownRule,
              "unknown deviation rule '" + std::string(name) + "'");
}

void apply_deviation(const Deviation& deviation, FirmRankings& rankings) {
  const int firm = deviation.firm;
  if (firm < 0 || firm >= static_cast<int>(rankings.order.size())) {
    throw Error(ErrorCode::kInvalidArgument, "deviating firm out of range");
  }
  if (deviation.rule == DeviationRule::kIdentity) return;
  const int n_types = static_cast<int>(rankings.order[firm].size());
  if (deviation.rule == DeviationRule::kFixedRanking &&
      static_cast<int>(deviation.fixed_ranking.size()) != n_types) {
    throw Error(ErrorCode::kInvalidArgument,
                "fixed ranking needs one order per type");
  }
  for (int m = 0; m < n_types; ++m) {
    auto& order = rankings.order[firm][m];
    auto& means = rankings.means[firm][m];
    std::vector<double> values(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) values[k] = means[order[k]];

    std::vector<int> target = order;
    switch (deviation.rule) {
      case DeviationRule::kSwapTopTwo:
        if (target.size() >= 2) std::swap(target[0], target[1]);
        break;
      case DeviationRule::kReverse:
        std::reverse(target.begin(), target.end());
        break;
      case DeviationRule::kFixedRanking: {
        target = deviation.fixed_ranking[m];
        std::vector<int> sorted = target;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> expect(order.size());
        std::iota(expect.begin(), expect.end(), 0);
        if (sorted != expect) {
          throw Error(ErrorCode::kInvalidArgument,
                      "fixed ranking for type " + std::to_string(m + 1) +
                          " is not a permutation of its workers");
        }
        break;
      }
      case DeviationRule::kIdentity:
        break;
    }
    for (std::size_t k = 0; k < target.size(); ++k) means[target[k]] = values[k];
    order = std::move(target);
  }
}

Market resolve_market(const InstanceSource& source, std::uint64_t master_seed,
                      int trial) {
  switch (source.kind) {
    case InstanceSource::Kind::kBuiltin:
      return builtin_market(source.example);
    case InstanceSource::Kind::kFile:
      return read_market_file(source.path);
    case InstanceSource::Kind::kRandom: {
      const std::uint64_t seed =
          source.resample_per_trial
              ? derive_seed(master_seed, static_cast<std::uint64_t>(trial),
                            Stream::kInstance)
              : source.seed;
      return Market(source.dims, generate_random_instance(seed, source.dims));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown instance source");
}

std::unique_ptr<PreferenceLearner> make_learner(PolicyKind policy,
                                                const Market& market,
                                                const ExperimentSpec& spec) {
  const auto& config = market.config();
  switch (policy) {
    case PolicyKind::kThompson:
      if (config.noise.kind != NoiseModel::Kind::kBernoulli) {
        throw Error(ErrorCode::kUnsupported,
                    "Thompson sampling supports Bernoulli feedback only");
      }
      return std::make_unique<ThompsonLearner>(config, spec.prior);
    case PolicyKind::kUcb:
      return std::make_unique<UcbLearner>(
          config, spec.ucb_delta.value_or(
                      UcbState::default_delta(config, spec.horizon)));
    case PolicyKind::kClairvoyant:
      return std::make_unique<ClairvoyantLearner>(market.prefs().firm_scores);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown policy");
}

RoundRecord run_round(TrialState& state, const Market& market,
                      const Matching& oracle, int round,
                      const std::optional<Deviation>& deviation) {
  FirmRankings rankings =
      FirmRankings::from_scores(state.learner->submit(round, state.sampling_rng));
  if (deviation) apply_deviation(*deviation, rankings);

  RoundRecord record;
  record.matching = double_match(rankings, market);
  const BlockingReport report =
      find_blocking_pairs(record.matching, rankings, market);
  record.stable = report.stable();
  if (!record.stable) {
    const auto& bp = report.pairs.front();
    std::ostringstream msg;
    msg << "round " << round << ": blocking pair (firm " << bp.firm + 1
        << ", type " << bp.type + 1 << ", worker " << bp.worker + 1
        << ") in matching " << dump_matching(record.matching);
    throw Error(ErrorCode::kStabilityViolation, msg.str());
  }

  const int n_types = market.n_types();
  for (int i = 0; i < market.n_firms(); ++i) {
    for (int m = 0; m < n_types; ++m) {
      for (int j : record.matching.workers(i, m)) {
        record.rewards.push_back(
            draw_reward(market, i, m, j, round, state.reward_rng));
      }
    }
  }
  state.learner->observe(record.rewards);

  record.regret.resize(static_cast<std::size_t>(market.n_firms()) * n_types);
  for (int i = 0; i < market.n_firms(); ++i) {
    for (int m = 0; m < n_types; ++m) {
      record.regret[i * n_types + m] =
          instantaneous_regret(market, oracle, record.matching, i, m);
    }
  }
  return record;
}

namespace {

TrialTrajectory run_trial_on(const ExperimentSpec& spec, int trial_index,
                             const Market& market, const Matching& oracle) {
  if (spec.horizon <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be positive");
  }
  TrialState state{
      make_learner(spec.policy, market, spec),
      make_stream(spec.master_seed, trial_index, Stream::kSampling),
      make_stream(spec.master_seed, trial_index, Stream::kReward)};
  TrialTrajectory trajectory;
  trajectory.trial = trial_index;
  trajectory.ledger = RegretLedger(market.n_firms(), market.n_types());
  trajectory.rounds.reserve(spec.horizon);
  for (int t = 1; t <= spec.horizon; ++t) {
    RoundRecord record = run_round(state, market, oracle, t, spec.deviation);
    trajectory.ledger.record(record.regret);
    trajectory.rounds.push_back(std::move(record));
  }
  if (const auto* p = state.learner->posterior()) trajectory.final_posterior = *p;
  if (const auto* u = state.learner->ucb()) trajectory.final_ucb = *u;
  return trajectory;
}

}  // namespace

TrialTrajectory run_trial(const ExperimentSpec& spec, int trial_index) {
  const Market market = resolve_market(spec.source, spec.master_seed, trial_index);
  const Matching oracle = firm_optimal_oracle(market);
  return run_trial_on(spec, trial_index, market, oracle);
}

TrialSummary summarize_trial(const TrialTrajectory& trajectory,
                             const Market& market, const Matching& oracle) {
  TrialSummary s;
  s.trial = trajectory.trial;
  s.ledger = trajectory.ledger;
  s.final_posterior = trajectory.final_posterior;
  int hits = 0;
  for (const auto& r : trajectory.rounds) hits += r.matching == oracle;
  s.matching_rate = trajectory.rounds.empty()
                        ? 0.0
                        : static_cast<double>(hits) / trajectory.rounds.size();
  for (int t = 0; t < s.ledger.rounds(); ++t) {
    if (s.ledger.cumulative_market(t) > regret_bound(market.config(), t + 1)) {
      ++s.envelope_violations;
    }
  }
  for (int i = 0; i < market.n_firms(); ++i) {
    s.firm_sublinear.push_back(is_sublinear(s.ledger.firm_curve(i)));
  }
  return s;
}

double ExperimentResult::mean_matching_rate() const {
  if (trials.empty()) return 0.0;
  double total = 0.0;
  for (const auto& t : trials) total += t.matching_rate;
  return total / trials.size();
}

int ExperimentResult::envelope_violations() const {
  int total = 0;
  for (const auto& t : trials) total += t.envelope_violations;
  return total;
}

std::vector<double> ExperimentResult::mean_firm_curve(int firm) const {
  std::vector<double> out(spec.horizon, 0.0);
  for (const auto& t : trials) {
    for (int r = 0; r < spec.horizon; ++r) out[r] += t.ledger.cumulative_firm(firm, r);
  }
  for (double& v : out) v /= static_cast<double>(trials.size());
  return out;
}

std::vector<double> ExperimentResult::mean_cell_curve(int firm, int type) const {
  std::vector<double> out(spec.horizon, 0.0);
  for (const auto& t : trials) {
    for (int r = 0; r < spec.horizon; ++r) out[r] += t.ledger.cumulative(firm, type, r);
  }
  for (double& v : out) v /= static_cast<double>(trials.size());
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.trials <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  }
  const bool shared_instance =
      !(spec.source.kind == InstanceSource::Kind::kRandom &&
        spec.source.resample_per_trial);
  const Market first = resolve_market(spec.source, spec.master_seed, 0);
  const Matching first_oracle = firm_optimal_oracle(first);

  std::vector<std::optional<TrialSummary>> summaries(spec.trials);
  std::vector<std::exception_ptr> errors(spec.trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < spec.trials; k = next++) {
      try {
        if (shared_instance) {
          summaries[k] = summarize_trial(run_trial_on(spec, k, first, first_oracle),
                                         first, first_oracle);
        } else {
          const Market market = resolve_market(spec.source, spec.master_seed, k);
          const Matching oracle = firm_optimal_oracle(market);
          summaries[k] = summarize_trial(run_trial_on(spec, k, market, oracle),
                                         market, oracle);
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  int threads = spec.threads > 0
                    ? spec.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, spec.trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result{spec, first, first_oracle, {}, {}, {}, {}};
  result.trials.reserve(spec.trials);
  for (auto& s : summaries) result.trials.push_back(std::move(*s));

  std::vector<RegretLedger> ledgers;
  ledgers.reserve(result.trials.size());
  for (const auto& t : result.trials) ledgers.push_back(t.ledger);
  result.bswg = bswg(ledgers);
  result.bswg_stderr.resize(spec.horizon);
  result.bound.resize(spec.horizon);
  std::vector<double> column(result.trials.size());
  for (int r = 0; r < spec.horizon; ++r) {
    for (std::size_t k = 0; k < ledgers.size(); ++k) {
      column[k] = ledgers[k].cumulative_market(r);
    }
    result.bswg_stderr[r] = mean_stderr(column).stderr_;
    result.bound[r] = regret_bound(first.config(), r + 1);
  }

  if (!spec.output_dir.empty()) export_results(result, spec.output_dir);
  return result;
}

std::string version_string() { return QUOTAMATCH_VERSION; }

}  // namespace quotamatch
