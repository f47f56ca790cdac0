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

#include "quotamatch/policy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace quotamatch {

namespace {

template <typename T>
std::vector<std::vector<std::vector<T>>> shaped(const MarketConfig& config,
                                                T value) {
  std::vector<std::vector<std::vector<T>>> table(config.n_firms);
  for (auto& per_type : table) {
    per_type.reserve(config.workers_per_type.size());
    for (int k : config.workers_per_type) per_type.emplace_back(k, value);
  }
  return table;
}

}  // namespace

PosteriorState::PosteriorState(const MarketConfig& config, BetaPrior prior)
    : prior_(prior),
      alpha_(shaped(config, prior.alpha)),
      beta_(shaped(config, prior.beta)) {
  if (!(prior.alpha > 0.0) || !(prior.beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "Beta prior parameters must be positive");
  }
}

double PosteriorState::mean(int firm, int type, int worker) const {
  const double a = alpha(firm, type, worker);
  const double b = beta(firm, type, worker);
  return a / (a + b);
}

double PosteriorState::variance(int firm, int type, int worker) const {
  const double a = alpha(firm, type, worker);
  const double b = beta(firm, type, worker);
  const double s = a + b;
  return a * b / (s * s * (s + 1.0));
}

void PosteriorState::observe(const RewardSample& r) {
  if (r.value == 1.0) {
    alpha_[r.firm][r.type][r.worker] += 1.0;
  } else if (r.value == 0.0) {
    beta_[r.firm][r.type][r.worker] += 1.0;
  } else {
    throw Error(ErrorCode::kNonBinaryReward,
                "Beta-Bernoulli update needs a 0/1 reward, got " +
                    std::to_string(r.value));
  }
}

ScoreTable ts_sample(const PosteriorState& state, Rng& rng) {
  const auto& alphas = state.alphas();
  const auto& betas = state.betas();
  ScoreTable out(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out[i].resize(alphas[i].size());
    for (std::size_t m = 0; m < alphas[i].size(); ++m) {
      const auto& a = alphas[i][m];
      const auto& b = betas[i][m];
      auto& row = out[i][m];
      row.resize(a.size());
      for (std::size_t j = 0; j < a.size(); ++j) row[j] = sample_beta(rng, a[j], b[j]);
    }
  }
  return out;
}

void posterior_update(PosteriorState& state,
                      std::span<const RewardSample> rewards) {
  // Validate first so a bad batch leaves the state untouched.
  for (const auto& r : rewards) {
    if (r.value != 0.0 && r.value != 1.0) {
      throw Error(ErrorCode::kNonBinaryReward,
                  "Beta-Bernoulli update needs a 0/1 reward, got " +
                      std::to_string(r.value));
    }
  }
  for (const auto& r : rewards) state.observe(r);
}

UcbState::UcbState(const MarketConfig& config, double delta)
    : delta_(delta), count_(shaped(config, 0)), sum_(shaped(config, 0.0)) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "UCB delta must lie in (0,1)");
  }
}

double UcbState::default_delta(const MarketConfig& config, int horizon) {
  return 2.0 / (static_cast<double>(config.total_capacity()) * horizon);
}

double UcbState::mean(int firm, int type, int worker) const {
  const int n = count(firm, type, worker);
  return n == 0 ? 0.0 : sum(firm, type, worker) / n;
}

void UcbState::observe(const RewardSample& r) {
  ++count_[r.firm][r.type][r.worker];
  sum_[r.firm][r.type][r.worker] += r.value;
}

double ucb_index(double mean, int count, double delta) {
  if (count <= 0) return 1.0;
  return std::min(mean + std::sqrt(std::log(2.0 / delta) / count), 1.0);
}

ScoreTable ucb_indices(const UcbState& state, int round) {
  if (round < 1) {
    throw Error(ErrorCode::kInvalidArgument, "UCB round must be >= 1");
  }
  ScoreTable out(state.n_firms());
  for (int i = 0; i < state.n_firms(); ++i) {
    out[i].resize(state.n_types());
    for (int m = 0; m < state.n_types(); ++m) {
      const int k = state.n_workers(m);
      out[i][m].resize(k);
      for (int j = 0; j < k; ++j) {
        out[i][m][j] = ucb_index(state.mean(i, m, j), state.count(i, m, j),
                                 state.delta());
      }
    }
  }
  return out;
}

void ucb_update(UcbState& state, std::span<const RewardSample> rewards) {
  for (const auto& r : rewards) state.observe(r);
}

void write_posterior_csv(std::ostream& out, const PosteriorState& state) {
  out << "firm,type,worker,alpha,beta,mean,variance\n";
  const auto& alphas = state.alphas();
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t m = 0; m < alphas[i].size(); ++m) {
      for (std::size_t j = 0; j < alphas[i][m].size(); ++j) {
        const int f = static_cast<int>(i), t = static_cast<int>(m),
                  w = static_cast<int>(j);
        out << f + 1 << ',' << t + 1 << ',' << w + 1 << ','
            << state.alpha(f, t, w) << ',' << state.beta(f, t, w) << ','
            << state.mean(f, t, w) << ',' << state.variance(f, t, w) << '\n';
      }
    }
  }
  out.precision(old_precision);
}

}  // namespace quotamatch
