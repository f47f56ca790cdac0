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

#ifndef QUOTAMATCH_POLICY_HPP_
#define QUOTAMATCH_POLICY_HPP_

#include <iosfwd>
#include <span>

#include "quotamatch/market.hpp"

namespace quotamatch {

struct BetaPrior {
  double alpha = 0.1;
  double beta = 0.1;
};

// Beta posterior per (firm, type, worker) cell.
class PosteriorState {
 public:
  PosteriorState() = default;
  PosteriorState(const MarketConfig& config, BetaPrior prior);

  double alpha(int firm, int type, int worker) const {
    return alpha_[firm][type][worker];
  }
  double beta(int firm, int type, int worker) const {
    return beta_[firm][type][worker];
  }
  double mean(int firm, int type, int worker) const;
  double variance(int firm, int type, int worker) const;
  const BetaPrior& prior() const { return prior_; }
  const ScoreTable& alphas() const { return alpha_; }
  const ScoreTable& betas() const { return beta_; }

  // y = 1 bumps alpha, y = 0 bumps beta. Throws kNonBinaryReward otherwise.
  void observe(const RewardSample& sample);

 private:
  BetaPrior prior_;
  ScoreTable alpha_;
  ScoreTable beta_;
};

// One Beta draw per cell, cells visited in (firm, type, worker) order.
ScoreTable ts_sample(const PosteriorState& state, Rng& rng);

// Observed cells change; every other cell keeps its parameters.
void posterior_update(PosteriorState& state,
                      std::span<const RewardSample> rewards);

// Empirical-mean bookkeeping for the centralised UCB baseline.
class UcbState {
 public:
  UcbState() = default;
  UcbState(const MarketConfig& config, double delta);

  // Default confidence parameter 2 / (Q T).
  static double default_delta(const MarketConfig& config, int horizon);

  int count(int firm, int type, int worker) const {
    return count_[firm][type][worker];
  }
  double sum(int firm, int type, int worker) const {
    return sum_[firm][type][worker];
  }
  double mean(int firm, int type, int worker) const;
  double delta() const { return delta_; }
  int n_firms() const { return static_cast<int>(count_.size()); }
  int n_types() const {
    return count_.empty() ? 0 : static_cast<int>(count_.front().size());
  }
  int n_workers(int type) const {
    return static_cast<int>(count_.front()[type].size());
  }

  void observe(const RewardSample& sample);

 private:
  double delta_ = 0.0;
  std::vector<std::vector<std::vector<int>>> count_;
  ScoreTable sum_;
};

// min(mean + sqrt(log(2/delta) / n), 1), or 1 for unplayed cells.
double ucb_index(double mean, int count, double delta);

ScoreTable ucb_indices(const UcbState& state, int round);

void ucb_update(UcbState& state, std::span<const RewardSample> rewards);

// Columns: firm,type,worker,alpha,beta,mean,variance (1-based indices).
void write_posterior_csv(std::ostream& out, const PosteriorState& state);

}  // namespace quotamatch

#endif  // QUOTAMATCH_POLICY_HPP_
