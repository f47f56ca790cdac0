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

#include "quotamatch/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>

namespace quotamatch {

int MarketConfig::total_workers() const {
  return std::accumulate(workers_per_type.begin(), workers_per_type.end(), 0);
}

int MarketConfig::total_capacity() const {
  return std::accumulate(total_quota.begin(), total_quota.end(), 0);
}

int MarketConfig::max_workers_per_type() const {
  if (workers_per_type.empty()) return 0;
  return *std::max_element(workers_per_type.begin(), workers_per_type.end());
}

int MarketConfig::floor_sum(int firm) const {
  const auto& row = type_quota[firm];
  return std::accumulate(row.begin(), row.end(), 0);
}

int MarketConfig::leftover_quota(int firm) const {
  return total_quota[firm] - floor_sum(firm);
}

WorkerIndex::WorkerIndex(std::span<const int> workers_per_type) {
  offsets_.reserve(workers_per_type.size() + 1);
  offsets_.push_back(0);
  for (int k : workers_per_type) offsets_.push_back(offsets_.back() + k);
  type_of_.reserve(offsets_.back());
  for (int m = 0; m < static_cast<int>(workers_per_type.size()); ++m) {
    type_of_.insert(type_of_.end(), workers_per_type[m], m);
  }
}

WorkerId WorkerIndex::local(int global_id) const {
  const int m = type_of_[global_id];
  return {m, global_id - offsets_[m]};
}

WorkerPreferences::WorkerPreferences(
    const std::vector<std::vector<std::vector<int>>>& ranks,
    const WorkerIndex& index, int n_firms)
    : n_firms_(n_firms),
      rank_(static_cast<std::size_t>(index.size()) * n_firms, n_firms) {
  for (int m = 0; m < index.n_types(); ++m) {
    for (int j = 0; j < index.count(m); ++j) {
      const auto& list = ranks[m][j];
      const std::size_t base =
          static_cast<std::size_t>(index.global(m, j)) * n_firms;
      for (int pos = 0; pos < static_cast<int>(list.size()); ++pos) {
        rank_[base + list[pos]] = pos;
      }
    }
  }
}

namespace {

void check_shape(const MarketConfig& c, std::vector<Issue>& issues) {
  auto bad = [&](const std::string& msg) {
    issues.push_back({ErrorCode::kInvalidArgument, msg});
  };
  if (c.n_firms <= 0) bad("n_firms must be positive");
  if (c.workers_per_type.empty()) bad("n_types must be positive");
  for (std::size_t m = 0; m < c.workers_per_type.size(); ++m) {
    if (c.workers_per_type[m] <= 0) {
      bad("workers_per_type[" + std::to_string(m + 1) + "] must be positive");
    }
  }
  if (c.horizon <= 0) bad("horizon must be positive");
  if (c.noise.kind == NoiseModel::Kind::kGaussian &&
      !(c.noise.sigma >= 0.0 && std::isfinite(c.noise.sigma))) {
    bad("gaussian sigma must be finite and non-negative");
  }
  if (static_cast<int>(c.total_quota.size()) != c.n_firms) {
    bad("total_quota must have one entry per firm");
  }
  if (static_cast<int>(c.type_quota.size()) != c.n_firms) {
    bad("type_quota must have one row per firm");
  }
}

}  // namespace

std::vector<Issue> validate_config(const MarketConfig& c,
                                   const TruePreferences& prefs) {
  std::vector<Issue> issues;
  check_shape(c, issues);
  if (!issues.empty()) return issues;

  const int n = c.n_firms;
  const int types = c.n_types();
  for (int i = 0; i < n; ++i) {
    const std::string firm = "firm " + std::to_string(i + 1);
    if (static_cast<int>(c.type_quota[i].size()) != types) {
      issues.push_back({ErrorCode::kInvalidArgument,
                        firm + ": type_quota row has wrong length"});
      continue;
    }
    if (c.total_quota[i] <= 0) {
      issues.push_back({ErrorCode::kInvalidArgument,
                        firm + ": total_quota must be positive"});
    }
    bool negative = false;
    for (int q : c.type_quota[i]) negative |= q < 0;
    if (negative) {
      issues.push_back({ErrorCode::kInvalidArgument,
                        firm + ": type quotas must be non-negative"});
    } else if (c.floor_sum(i) > c.total_quota[i]) {
      issues.push_back(
          {ErrorCode::kQuotaInfeasible,
           firm + ": type quotas sum to " + std::to_string(c.floor_sum(i)) +
               " > total quota " + std::to_string(c.total_quota[i])});
    }
  }

  if (static_cast<int>(prefs.firm_scores.size()) != n) {
    issues.push_back({ErrorCode::kInvalidArgument,
                      "firm_scores must have one entry per firm"});
  } else {
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(prefs.firm_scores[i].size()) != types) {
        issues.push_back({ErrorCode::kInvalidArgument,
                          "firm_scores[" + std::to_string(i + 1) +
                              "] must have one entry per type"});
        continue;
      }
      for (int m = 0; m < types; ++m) {
        const auto& row = prefs.firm_scores[i][m];
        if (static_cast<int>(row.size()) != c.workers_per_type[m]) {
          issues.push_back({ErrorCode::kInvalidArgument,
                            "firm_scores row length mismatch for firm " +
                                std::to_string(i + 1) + " type " +
                                std::to_string(m + 1)});
          continue;
        }
        for (int j = 0; j < static_cast<int>(row.size()); ++j) {
          if (!(row[j] >= 0.0 && row[j] <= 1.0)) {
            std::ostringstream msg;
            msg << "score out of [0,1] for firm " << i + 1 << " type "
                << m + 1 << " worker " << j + 1 << ": " << row[j];
            issues.push_back({ErrorCode::kScoreOutOfRange, msg.str()});
          }
        }
      }
    }
  }

  if (static_cast<int>(prefs.worker_ranks.size()) != types) {
    issues.push_back({ErrorCode::kInvalidArgument,
                      "worker_ranks must have one entry per type"});
  } else {
    for (int m = 0; m < types; ++m) {
      if (static_cast<int>(prefs.worker_ranks[m].size()) !=
          c.workers_per_type[m]) {
        issues.push_back({ErrorCode::kInvalidArgument,
                          "worker_ranks[" + std::to_string(m + 1) +
                              "] must have one entry per worker"});
        continue;
      }
      for (int j = 0; j < c.workers_per_type[m]; ++j) {
        const auto& list = prefs.worker_ranks[m][j];
        std::vector<int> seen(n, 0);
        bool ok = static_cast<int>(list.size()) == n;
        for (int f : list) {
          if (f < 0 || f >= n || seen[f]++) ok = false;
        }
        if (!ok) {
          issues.push_back({ErrorCode::kNonPermutation,
                            "worker " + std::to_string(j + 1) + " of type " +
                                std::to_string(m + 1) +
                                ": ranking is not a permutation of the firms"});
        }
      }
    }
  }
  return issues;
}

Market::Market(MarketConfig config, TruePreferences prefs)
    : config_(std::move(config)), prefs_(std::move(prefs)) {
  const auto issues = validate_config(config_, prefs_);
  if (!issues.empty()) {
    std::string msg = "invalid market:";
    for (const auto& issue : issues) {
      msg += "\n  [";
      msg += to_string(issue.code);
      msg += "] ";
      msg += issue.message;
    }
    throw Error(issues.front().code, msg);
  }
  index_ = WorkerIndex(config_.workers_per_type);
  worker_prefs_ =
      WorkerPreferences(prefs_.worker_ranks, index_, config_.n_firms);
}

TruePreferences generate_random_instance(std::uint64_t seed,
                                         const MarketConfig& dims) {
  Rng rng(seed);
  TruePreferences prefs;
  prefs.firm_scores.resize(dims.n_firms);
  for (auto& per_type : prefs.firm_scores) {
    per_type.resize(dims.workers_per_type.size());
    for (std::size_t m = 0; m < per_type.size(); ++m) {
      per_type[m].resize(dims.workers_per_type[m]);
      for (double& s : per_type[m]) s = uniform01(rng);
    }
  }
  prefs.worker_ranks.resize(dims.workers_per_type.size());
  for (std::size_t m = 0; m < prefs.worker_ranks.size(); ++m) {
    prefs.worker_ranks[m].resize(dims.workers_per_type[m]);
    for (auto& list : prefs.worker_ranks[m]) {
      list.resize(dims.n_firms);
      std::iota(list.begin(), list.end(), 0);
      // Fisher-Yates with Boost's portable integer distribution.
      for (int k = dims.n_firms - 1; k > 0; --k) {
        boost::random::uniform_int_distribution<int> pick(0, k);
        std::swap(list[k], list[pick(rng)]);
      }
    }
  }
  return prefs;
}

std::vector<int> scores_to_ranking(std::span<const double> scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return order;
}

Matching::Matching(int n_firms, std::span<const int> workers_per_type)
    : assignment_(n_firms,
                  std::vector<std::vector<int>>(workers_per_type.size())) {
  reverse_.reserve(workers_per_type.size());
  for (int k : workers_per_type) reverse_.emplace_back(k, -1);
}

void Matching::assign(int firm, int type, int worker) {
  if (firm < 0 || firm >= n_firms() || type < 0 || type >= n_types() ||
      worker < 0 || worker >= static_cast<int>(reverse_[type].size())) {
    throw Error(ErrorCode::kInvalidArgument, "assignment index out of range");
  }
  int& owner = reverse_[type][worker];
  if (owner != -1) {
    throw Error(ErrorCode::kInvalidArgument,
                "worker " + std::to_string(worker + 1) + " of type " +
                    std::to_string(type + 1) + " is already matched to firm " +
                    std::to_string(owner + 1));
  }
  owner = firm;
  auto& set = assignment_[firm][type];
  set.insert(std::lower_bound(set.begin(), set.end(), worker), worker);
}

std::optional<int> Matching::firm_of(int type, int worker) const {
  const int f = reverse_[type][worker];
  if (f < 0) return std::nullopt;
  return f;
}

int Matching::count(int firm) const {
  int total = 0;
  for (const auto& set : assignment_[firm]) total += static_cast<int>(set.size());
  return total;
}

int Matching::matched_workers() const {
  int total = 0;
  for (int i = 0; i < n_firms(); ++i) total += count(i);
  return total;
}

RewardSample draw_reward(const Market& market, int firm, int type, int worker,
                         int round, Rng& rng) {
  const double mu = market.score(firm, type, worker);
  const auto& noise = market.config().noise;
  double value = 0.0;
  if (noise.kind == NoiseModel::Kind::kBernoulli) {
    value = sample_bernoulli(rng, mu) ? 1.0 : 0.0;
  } else {
    value = mu + sample_normal(rng, 0.0, noise.sigma);
  }
  return {firm, type, worker, value, round};
}

}  // namespace quotamatch
