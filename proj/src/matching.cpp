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

#include "quotamatch/matching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace quotamatch {

ProposalLedger::ProposalLedger(int n_firms, int n_workers)
    : n_firms_(n_firms),
      n_workers_(n_workers),
      seen_(static_cast<std::size_t>(n_firms) * n_workers, 0) {}

void ProposalLedger::record(int firm, int global_worker) {
  auto& slot = seen_[index(firm, global_worker)];
  if (!slot) {
    slot = 1;
    ++size_;
  }
}

void ProposalLedger::merge(const ProposalLedger& other) {
  if (other.n_firms_ != n_firms_ || other.n_workers_ != n_workers_) {
    throw Error(ErrorCode::kInvalidArgument, "ledger shapes differ");
  }
  for (std::size_t k = 0; k < seen_.size(); ++k) {
    if (other.seen_[k] && !seen_[k]) {
      seen_[k] = 1;
      ++size_;
    }
  }
}

void ProposalLedger::clear() {
  std::fill(seen_.begin(), seen_.end(), 0);
  size_ = 0;
}

std::vector<std::pair<int, int>> ProposalLedger::entries() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(size_);
  for (int f = 0; f < n_firms_; ++f) {
    for (int w = 0; w < n_workers_; ++w) {
      if (contains(f, w)) out.emplace_back(f, w);
    }
  }
  return out;
}

FirmRankings FirmRankings::from_scores(ScoreTable means) {
  FirmRankings r;
  r.order.resize(means.size());
  for (std::size_t i = 0; i < means.size(); ++i) {
    r.order[i].reserve(means[i].size());
    for (const auto& row : means[i]) r.order[i].push_back(scores_to_ranking(row));
  }
  r.means = std::move(means);
  return r;
}

std::vector<int> FirmRankings::merged(int firm, const WorkerIndex& index) const {
  std::vector<int> ids(index.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<double> flat(index.size());
  for (int g = 0; g < index.size(); ++g) {
    const WorkerId w = index.local(g);
    flat[g] = means[firm][w.type][w.index];
  }
  std::stable_sort(ids.begin(), ids.end(),
                   [&](int a, int b) { return flat[a] > flat[b]; });
  return ids;
}

std::vector<std::vector<int>> da_firm_propose(
    std::span<const std::vector<int>> firm_prefs,
    const WorkerPreferences& worker_prefs, std::span<const int> capacities,
    ProposalLedger& ledger) {
  const int n = static_cast<int>(firm_prefs.size());
  if (static_cast<int>(capacities.size()) != n || ledger.n_firms() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "da_firm_propose: firm count mismatch");
  }
  // Pairs excluded on entry; proposals made now are recorded separately so a
  // firm's own earlier proposal this run never blocks it.
  const ProposalLedger excluded = ledger;

  std::vector<int> holder(ledger.n_workers(), -1);
  std::vector<std::size_t> next(n, 0);
  std::vector<int> held(n, 0);
  std::deque<int> free_firms(n);
  std::iota(free_firms.begin(), free_firms.end(), 0);

  while (!free_firms.empty()) {
    const int f = free_firms.front();
    free_firms.pop_front();
    const auto& prefs = firm_prefs[f];
    while (held[f] < capacities[f] && next[f] < prefs.size()) {
      const int w = prefs[next[f]++];
      if (excluded.contains(f, w)) continue;
      ledger.record(f, w);
      const int current = holder[w];
      if (current == -1) {
        holder[w] = f;
        ++held[f];
      } else if (worker_prefs.prefers(w, f, current)) {
        holder[w] = f;
        ++held[f];
        --held[current];
        free_firms.push_back(current);
      }
    }
  }

  std::vector<std::vector<int>> out(n);
  for (int f = 0; f < n; ++f) {
    for (int w : firm_prefs[f]) {
      if (holder[w] == f) out[f].push_back(w);
    }
  }
  return out;
}

StageOneResult da_with_types(const FirmRankings& rankings,
                             const Market& market) {
  const auto& config = market.config();
  const auto& index = market.workers();
  const int n = config.n_firms;
  StageOneResult result{Matching(n, config.workers_per_type),
                        ProposalLedger(n, index.size())};

  // Types touch disjoint worker ids, so the per-type runs share nothing but
  // disjoint ledger cells.
  std::vector<std::vector<int>> prefs(n);
  std::vector<int> capacity(n);
  for (int m = 0; m < config.n_types(); ++m) {
    for (int i = 0; i < n; ++i) {
      const auto& order = rankings.order[i][m];
      prefs[i].resize(order.size());
      std::transform(order.begin(), order.end(), prefs[i].begin(),
                     [&](int j) { return index.global(m, j); });
      capacity[i] = config.type_quota[i][m];
    }
    const auto held =
        da_firm_propose(prefs, market.worker_prefs(), capacity, result.ledger);
    for (int i = 0; i < n; ++i) {
      for (int g : held[i]) result.matching.assign(i, m, index.local(g).index);
    }
  }
  return result;
}

bool Continuation::skip() const {
  return std::none_of(continuing_firm.begin(), continuing_firm.end(),
                      [](bool b) { return b; });
}

Continuation sanitize_quota(const MarketConfig& config,
                            const Matching& first_match,
                            const WorkerIndex& index) {
  Continuation c;
  c.leftover.resize(config.n_firms);
  c.continuing_firm.resize(config.n_firms);
  for (int i = 0; i < config.n_firms; ++i) {
    c.leftover[i] = config.leftover_quota(i);
    c.continuing_firm[i] = c.leftover[i] > 0;
  }
  c.candidate_worker.assign(index.size(), true);
  for (int g = 0; g < index.size(); ++g) {
    const WorkerId w = index.local(g);
    if (first_match.firm_of(w.type, w.index)) c.candidate_worker[g] = false;
  }
  return c;
}

Matching second_match(const FirmRankings& rankings, const Market& market,
                      const Continuation& continuation,
                      const ProposalLedger& ledger) {
  const auto& config = market.config();
  const auto& index = market.workers();
  const int n = config.n_firms;
  Matching result(n, config.workers_per_type);
  if (continuation.skip()) return result;

  std::vector<std::vector<int>> prefs(n);
  std::vector<int> capacity(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!continuation.continuing_firm[i]) continue;
    capacity[i] = continuation.leftover[i];
    for (int g : rankings.merged(i, index)) {
      if (continuation.candidate_worker[g]) prefs[i].push_back(g);
    }
  }
  ProposalLedger scratch = ledger;
  const auto held =
      da_firm_propose(prefs, market.worker_prefs(), capacity, scratch);
  for (int i = 0; i < n; ++i) {
    for (int g : held[i]) {
      const WorkerId w = index.local(g);
      result.assign(i, w.type, w.index);
    }
  }
  return result;
}

DoubleMatchResult double_match_stages(const FirmRankings& rankings,
                                      const Market& market) {
  const auto& config = market.config();
  auto stage_one = da_with_types(rankings, market);
  const Continuation continuation =
      sanitize_quota(config, stage_one.matching, market.workers());
  Matching stage_two =
      second_match(rankings, market, continuation, stage_one.ledger);

  Matching merged = stage_one.matching;
  for (int i = 0; i < config.n_firms; ++i) {
    for (int m = 0; m < config.n_types(); ++m) {
      for (int j : stage_two.workers(i, m)) merged.assign(i, m, j);
    }
  }
  return {std::move(merged), std::move(stage_one.matching),
          std::move(stage_two), std::move(stage_one.ledger)};
}

}  // namespace quotamatch
