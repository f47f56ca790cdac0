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

#ifndef QUOTAMATCH_MATCHING_HPP_
#define QUOTAMATCH_MATCHING_HPP_

#include <span>
#include <utility>
#include <vector>

#include "quotamatch/market.hpp"

namespace quotamatch {

// (firm, worker) pairs a firm has proposed to during the current round.
// Workers are keyed by global id.
class ProposalLedger {
 public:
  ProposalLedger() = default;
  ProposalLedger(int n_firms, int n_workers);

  void record(int firm, int global_worker);
  bool contains(int firm, int global_worker) const {
    return seen_[index(firm, global_worker)] != 0;
  }
  void merge(const ProposalLedger& other);
  void clear();

  int n_firms() const { return n_firms_; }
  int n_workers() const { return n_workers_; }
  std::size_t size() const { return size_; }
  // Sorted (firm, global worker) pairs.
  std::vector<std::pair<int, int>> entries() const;

 private:
  std::size_t index(int firm, int w) const {
    return static_cast<std::size_t>(firm) * n_workers_ + w;
  }

  int n_firms_ = 0;
  int n_workers_ = 0;
  std::size_t size_ = 0;
  std::vector<unsigned char> seen_;
};

// Submitted firm-side preferences for one round: the scores a firm reports
// and the per-type orders derived from them.
struct FirmRankings {
  ScoreTable means;                                  // [firm][type][worker]
  std::vector<std::vector<std::vector<int>>> order;  // [firm][type], best first

  static FirmRankings from_scores(ScoreTable means);

  // Global worker ids of all types, best first by score; equal scores fall
  // back to ascending global id.
  std::vector<int> merged(int firm, const WorkerIndex& index) const;
};

// Firm-proposing deferred acceptance over one pool of workers. Firms propose
// down `firm_prefs` (global ids), skipping pairs already in `ledger`, until
// full or out of candidates; every proposal is recorded in `ledger`. Returns
// each firm's held workers in that firm's preference order.
std::vector<std::vector<int>> da_firm_propose(
    std::span<const std::vector<int>> firm_prefs,
    const WorkerPreferences& worker_prefs, std::span<const int> capacities,
    ProposalLedger& ledger);

struct StageOneResult {
  Matching matching;
  ProposalLedger ledger;
};

// Independent per-type DA with capacities q_i^m.
StageOneResult da_with_types(const FirmRankings& rankings,
                             const Market& market);

struct Continuation {
  std::vector<int> leftover;            // Q~_i per firm
  std::vector<bool> continuing_firm;    // leftover > 0
  std::vector<bool> candidate_worker;   // by global id, unmatched in stage one

  bool skip() const;
};

Continuation sanitize_quota(const MarketConfig& config,
                            const Matching& first_match,
                            const WorkerIndex& index);

// Cross-type DA among continuing firms and remaining workers.
Matching second_match(const FirmRankings& rankings, const Market& market,
                      const Continuation& continuation,
                      const ProposalLedger& ledger);

struct DoubleMatchResult {
  Matching merged;
  Matching first;
  Matching second;
  ProposalLedger ledger;
};

DoubleMatchResult double_match_stages(const FirmRankings& rankings,
                                      const Market& market);

inline Matching double_match(const FirmRankings& rankings,
                             const Market& market) {
  return double_match_stages(rankings, market).merged;
}

}  // namespace quotamatch

#endif  // QUOTAMATCH_MATCHING_HPP_
