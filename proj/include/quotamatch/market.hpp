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

#ifndef QUOTAMATCH_MARKET_HPP_
#define QUOTAMATCH_MARKET_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quotamatch/error.hpp"
#include "quotamatch/rng.hpp"

namespace quotamatch {

// Firm, type and worker indices are 0-based in memory. Files and printed
// output use 1-based indices.

struct NoiseModel {
  enum class Kind { kBernoulli, kGaussian };

  Kind kind = Kind::kBernoulli;
  double sigma = 0.0;

  static NoiseModel bernoulli() { return {}; }
  static NoiseModel gaussian(double sigma) { return {Kind::kGaussian, sigma}; }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

// Dimensions and quota structure of one market.
struct MarketConfig {
  int n_firms = 0;
  std::vector<int> workers_per_type;            // K_m
  std::vector<std::vector<int>> type_quota;     // [firm][type], floors q_i^m
  std::vector<int> total_quota;                 // Q_i
  int horizon = 1;
  NoiseModel noise;

  int n_types() const { return static_cast<int>(workers_per_type.size()); }
  int total_workers() const;        // K
  int total_capacity() const;       // Q
  int max_workers_per_type() const;  // K_max
  int floor_sum(int firm) const;
  // Capacity left for the cross-type stage: Q_i minus the type floors.
  int leftover_quota(int firm) const;

  friend bool operator==(const MarketConfig&, const MarketConfig&) = default;
};

// Scores indexed [firm][type][worker].
using ScoreTable = std::vector<std::vector<std::vector<double>>>;

// Ground truth. worker_ranks[m][j] lists firm indices from most to least
// preferred by worker j of type m.
struct TruePreferences {
  ScoreTable firm_scores;
  std::vector<std::vector<std::vector<int>>> worker_ranks;

  friend bool operator==(const TruePreferences&,
                         const TruePreferences&) = default;
};

struct WorkerId {
  int type = 0;
  int index = 0;

  friend auto operator<=>(const WorkerId&, const WorkerId&) = default;
};

// Flattens (type, index) into a dense global id, types in ascending order.
class WorkerIndex {
 public:
  WorkerIndex() = default;
  explicit WorkerIndex(std::span<const int> workers_per_type);

  int size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  int n_types() const { return static_cast<int>(offsets_.size()) - 1; }
  int offset(int type) const { return offsets_[type]; }
  int count(int type) const { return offsets_[type + 1] - offsets_[type]; }
  int global(int type, int index) const { return offsets_[type] + index; }
  int global(WorkerId id) const { return global(id.type, id.index); }
  WorkerId local(int global_id) const;

 private:
  std::vector<int> offsets_;
  std::vector<int> type_of_;
};

// Workers' rankings over firms as an O(1) lookup, keyed by global worker id.
class WorkerPreferences {
 public:
  WorkerPreferences() = default;
  WorkerPreferences(const std::vector<std::vector<std::vector<int>>>& ranks,
                    const WorkerIndex& index, int n_firms);

  // Position of `firm` in the worker's list; 0 is the favourite.
  int rank(int global_worker, int firm) const {
    return rank_[static_cast<std::size_t>(global_worker) * n_firms_ + firm];
  }
  bool prefers(int global_worker, int firm_a, int firm_b) const {
    return rank(global_worker, firm_a) < rank(global_worker, firm_b);
  }
  int n_firms() const { return n_firms_; }

 private:
  int n_firms_ = 0;
  std::vector<int> rank_;
};

struct Issue {
  ErrorCode code;
  std::string message;
};

// Every violated invariant of the pair; empty when the instance is valid.
std::vector<Issue> validate_config(const MarketConfig& config,
                                   const TruePreferences& prefs);

// A validated, immutable market instance.
class Market {
 public:
  // Throws Error (code of the first issue) listing every violation.
  Market(MarketConfig config, TruePreferences prefs);

  const MarketConfig& config() const { return config_; }
  const TruePreferences& prefs() const { return prefs_; }
  const WorkerIndex& workers() const { return index_; }
  const WorkerPreferences& worker_prefs() const { return worker_prefs_; }

  int n_firms() const { return config_.n_firms; }
  int n_types() const { return config_.n_types(); }
  double score(int firm, int type, int worker) const {
    return prefs_.firm_scores[firm][type][worker];
  }

  friend bool operator==(const Market& a, const Market& b) {
    return a.config_ == b.config_ && a.prefs_ == b.prefs_;
  }

 private:
  MarketConfig config_;
  TruePreferences prefs_;
  WorkerIndex index_;
  WorkerPreferences worker_prefs_;
};

// Scores i.i.d. U[0,1]; worker rankings uniform random permutations.
TruePreferences generate_random_instance(std::uint64_t seed,
                                         const MarketConfig& dims);

// Indices sorted by score descending, ties by ascending index.
std::vector<int> scores_to_ranking(std::span<const double> scores);

// One round's assignment. Worker sets are kept sorted ascending.
class Matching {
 public:
  Matching() = default;
  Matching(int n_firms, std::span<const int> workers_per_type);

  int n_firms() const { return static_cast<int>(assignment_.size()); }
  int n_types() const { return static_cast<int>(reverse_.size()); }

  // Throws kInvalidArgument if the worker is already matched.
  void assign(int firm, int type, int worker);

  const std::vector<int>& workers(int firm, int type) const {
    return assignment_[firm][type];
  }
  std::optional<int> firm_of(int type, int worker) const;
  int count(int firm) const;
  int count(int firm, int type) const {
    return static_cast<int>(assignment_[firm][type].size());
  }
  int matched_workers() const;

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.assignment_ == b.assignment_;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.assignment_ < b.assignment_;
  }

 private:
  std::vector<std::vector<std::vector<int>>> assignment_;  // [firm][type]
  std::vector<std::vector<int>> reverse_;                  // [type][worker]
};

struct RewardSample {
  int firm = 0;
  int type = 0;
  int worker = 0;
  double value = 0.0;
  int round = 0;

  friend bool operator==(const RewardSample&, const RewardSample&) = default;
};

RewardSample draw_reward(const Market& market, int firm, int type, int worker,
                         int round, Rng& rng);

}  // namespace quotamatch

#endif  // QUOTAMATCH_MARKET_HPP_
